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

#ifndef TWINFORGE_SENSORS_ACTUATOR_HPP_
#define TWINFORGE_SENSORS_ACTUATOR_HPP_

#include "twinforge/sensors/noise.hpp"
#include "twinforge/vehicle/vehicle_model.hpp"

namespace twinforge {

struct ActuatorReading {
  double throttle = 0.0;
  double steering = 0.0;  // rad
};

// Throttle and steering feedback: the actuator's current (rate-limited,
// clamped) position, not the command.
class ActuatorFeedback {
 public:
  explicit ActuatorFeedback(double sigma = 0.0, std::uint64_t seed = 0)
      : sigma_(sigma), noise_(seed) {}

  ActuatorReading Read(const VehicleState& state);

 private:
  double sigma_;
  GaussianNoise noise_;
};

}  // namespace twinforge

#endif  // TWINFORGE_SENSORS_ACTUATOR_HPP_
