/*
 * Copyright 2026 The TwinForge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "twinforge/vehicle/brake.hpp"

namespace twinforge {

std::array<double, 4> brake_torque(const std::array<double, 4>& corner_mass,
                                   double speed, const BrakeParams& params,
                                   BrakeInput input, Scale variant) {
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) {
    if (input == BrakeInput::kHandbrake && IsFrontWheel(i)) continue;
    if (variant == Scale::kSmall) {
      out[i] = params.idle_torque;
    } else {
      out[i] = corner_mass[i] * speed * speed /
               (2.0 * params.braking_distance) * params.disk_radius;
    }
  }
  return out;
}

}  // namespace twinforge
