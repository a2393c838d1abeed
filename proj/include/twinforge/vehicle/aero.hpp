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

#ifndef TWINFORGE_VEHICLE_AERO_HPP_
#define TWINFORGE_VEHICLE_AERO_HPP_

#include "twinforge/vehicle/powertrain.hpp"

namespace twinforge {

struct AeroParams {
  // Full-scale case table.
  double max_drag = 0.0;      // F_d_max, N
  double idle_drag = 0.0;     // F_d_idle, N
  double reverse_drag = 0.0;  // F_d_rev, N
  double max_speed = 0.0;     // v_max, m/s
  double reverse_speed = 0.0;  // v_rev, m/s
  double downforce_coefficient = 0.0;  // K_down, N s/m
  // Small-scale proportional drags.
  double linear_drag = 0.0;   // F_d, N s/m
  double angular_drag = 0.0;  // T_d, N m s
};

struct AeroForces {
  double drag = 0.0;          // N, magnitude opposing motion
  double downforce = 0.0;     // N, downward
  double angular_drag = 0.0;  // N m, magnitude opposing yaw rate
};

AeroForces aero_forces(double speed, double yaw_rate, double torque_out,
                       Gear gear, double wheel_rpm, const AeroParams& params,
                       Scale variant);

}  // namespace twinforge

#endif  // TWINFORGE_VEHICLE_AERO_HPP_
