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

#include "twinforge/vehicle/aero.hpp"

#include <cmath>

namespace twinforge {

AeroForces aero_forces(double speed, double yaw_rate, double torque_out,
                       Gear gear, double wheel_rpm, const AeroParams& params,
                       Scale variant) {
  const double v = std::abs(speed);
  AeroForces out;
  if (variant == Scale::kSmall) {
    out.drag = params.linear_drag * v;
    out.angular_drag = params.angular_drag * std::abs(yaw_rate);
    return out;
  }
  if (v >= params.max_speed) {
    out.drag = params.max_drag;
  } else if (torque_out == 0.0) {
    out.drag = params.idle_drag;
  } else if (v >= params.reverse_speed && gear.index == Gear::kReverse &&
             wheel_rpm < 0.0) {
    out.drag = params.reverse_drag;
  } else {
    out.drag = params.idle_drag;
  }
  out.downforce = params.downforce_coefficient * v;
  return out;
}

}  // namespace twinforge
