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

#ifndef TWINFORGE_VEHICLE_BRAKE_HPP_
#define TWINFORGE_VEHICLE_BRAKE_HPP_

#include <array>

#include "twinforge/vehicle/powertrain.hpp"

namespace twinforge {

struct BrakeParams {
  double idle_torque = 0.0;        // N m, small-scale holding torque; full-scale floor
  double braking_distance = 40.0;  // m, from 60 MPH
  double disk_radius = 0.15;       // m
};

enum class BrakeInput { kCombi, kHandbrake };

// Wheel order throughout the vehicle model.
enum WheelIndex : int { kFrontLeft = 0, kFrontRight = 1, kRearLeft = 2, kRearRight = 3 };
inline constexpr bool IsFrontWheel(int i) { return i < 2; }
inline constexpr bool IsLeftWheel(int i) { return i % 2 == 0; }

// Per-wheel brake torque magnitudes; the caller applies them against the
// wheel spin. Small-scale returns the holding torque, full-scale
// M_i v^2 / (2 D_brake) * R_b. Handbrake acts on the rear wheels only.
std::array<double, 4> brake_torque(const std::array<double, 4>& corner_mass,
                                   double speed, const BrakeParams& params,
                                   BrakeInput input, Scale variant);

}  // namespace twinforge

#endif  // TWINFORGE_VEHICLE_BRAKE_HPP_
