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

#include "twinforge/vehicle/steering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "twinforge/common/error.hpp"

namespace twinforge {

double steering_step(double current, double command, double speed,
                     const SteeringParams& params, double dt) {
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "dt must be positive");
  }
  const double target = std::clamp(command, -params.limit, params.limit);
  double rate = params.sensitivity;
  if (params.max_speed > 0.0) {
    rate += params.speed_sensitivity * std::abs(speed) / params.max_speed;
  }
  const double max_step = std::max(rate, 0.0) * dt;
  const double error = target - current;
  if (std::abs(error) <= max_step) return target;
  return current + std::copysign(max_step, error);
}

AckermannAngles ackermann_angles(double delta, double wheelbase,
                                 double track_width) {
  if (!(std::abs(delta) < std::numbers::pi / 2.0)) {
    throw Error(ErrorCode::kInvalidArgument, "steering geometry singular");
  }
  if (delta == 0.0) return {0.0, 0.0};
  const double t = std::tan(delta);
  const double numerator = 2.0 * wheelbase * t;
  const double left_den = 2.0 * wheelbase + track_width * t;
  const double right_den = 2.0 * wheelbase - track_width * t;
  const double guard = 1e-12 * wheelbase;
  if (left_den <= guard || right_den <= guard) {
    throw Error(ErrorCode::kInvalidArgument, "steering geometry singular");
  }
  return {std::atan(numerator / left_den), std::atan(numerator / right_den)};
}

}  // namespace twinforge
