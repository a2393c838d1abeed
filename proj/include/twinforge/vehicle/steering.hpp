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

#ifndef TWINFORGE_VEHICLE_STEERING_HPP_
#define TWINFORGE_VEHICLE_STEERING_HPP_

namespace twinforge {

struct SteeringParams {
  double limit = 0.5;              // delta_lim, rad
  double sensitivity = 1.0;        // kappa_delta, rad/s
  double speed_sensitivity = 0.0;  // kappa_v, rad/s
  double max_speed = 1.0;          // v_max, m/s
  double wheelbase = 0.3;          // l, m
  double track_width = 0.2;        // w, m
};

// Slews delta toward clamp(command, +-limit) at kappa_delta + kappa_v |v|/v_max
// without overshooting.
double steering_step(double current, double command, double speed,
                     const SteeringParams& params, double dt);

struct AckermannAngles {
  double left = 0.0;
  double right = 0.0;
};

// delta_l = atan(2 l tan d / (2 l + w tan d)),
// delta_r = atan(2 l tan d / (2 l - w tan d)).
// Positive delta turns toward the right wheel. Throws when a denominator
// reaches zero or changes sign.
AckermannAngles ackermann_angles(double delta, double wheelbase,
                                 double track_width);

}  // namespace twinforge

#endif  // TWINFORGE_VEHICLE_STEERING_HPP_
