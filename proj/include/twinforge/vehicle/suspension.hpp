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

#ifndef TWINFORGE_VEHICLE_SUSPENSION_HPP_
#define TWINFORGE_VEHICLE_SUSPENSION_HPP_

#include <optional>

#include "twinforge/worldcore/constants.hpp"

namespace twinforge {

struct WheelState {
  double spin = 0.0;                     // rad/s
  double steer = 0.0;                    // rad
  double suspension_displacement = 0.0;  // m, compression from static rest
  double suspension_velocity = 0.0;      // m/s
  double load = 0.0;                     // N, vertical tire load
  double revolutions = 0.0;              // cumulative wheel revolutions
};

struct SuspensionParams {
  double natural_frequency = 10.0;  // omega_n, rad/s
  double damping_ratio = 0.7;       // zeta
  double force_offset = 0.0;        // Z_f, m
  double equilibrium = 0.5;         // Z_0, fraction of travel at rest
  double anti_roll_stiffness = 0.0;  // K_r, N per unit normalized travel
  // Small-scale profiles may give K and B directly.
  std::optional<double> stiffness;  // N/m
  std::optional<double> damping;    // N s/m
};

struct SpringDamper {
  double stiffness = 0.0;  // K
  double damping = 0.0;    // B
};

// K = M omega_n^2, B = 2 zeta sqrt(K M), unless overridden.
SpringDamper spring_damper(double sprung_mass, const SuspensionParams& params);

// Z_F = Z_COM - Z_w + r_w - Z_f.
double force_application_point(double z_com, double z_wheel,
                               double wheel_radius, double force_offset);

// Z_s = M g / (Z_0 K): total travel that puts the static sag at Z_0.
double suspension_travel(double sprung_mass, double equilibrium,
                         double stiffness);

// (-Z_c - r_w) / Z_s, where Z_c is the contact point height in the wheel
// mount frame.
double normalized_travel(double contact_z, double wheel_radius, double travel);

struct AntiRollForces {
  double left = 0.0;
  double right = 0.0;
};

// F_L = K_r (Z_R - Z_L), F_R = K_r (Z_L - Z_R) while both wheels are grounded.
AntiRollForces anti_roll(double left_travel, double right_travel,
                         double stiffness, bool both_grounded);

struct CornerGeometry {
  double z_com = 0.0;         // m, COM height in the vehicle frame
  double z_wheel = 0.0;       // m, wheel centre height in the vehicle frame
  double wheel_radius = 0.0;  // m
  double wheel_mass = 0.0;    // kg
};

struct SuspensionResult {
  double force = 0.0;  // N, spring + damper + static preload on the wheel
  double application_point = 0.0;  // Z_F, m
  double contact_z = 0.0;          // Z_c in the mount frame, m
  bool grounded = true;
  WheelState wheel;
};

// One quarter-car step. The wheel rides the ground (z = 0); the sprung corner
// obeys M Z'' + B (Z' - z') + K (Z - z) = F_ext - F_r, integrated with
// semi-implicit Euler. The resulting wheel load includes the static weight.
SuspensionResult suspension_step(const WheelState& wheel, double sprung_mass,
                                 double external_force, double anti_roll_force,
                                 const CornerGeometry& geometry,
                                 const SuspensionParams& params, double dt);

}  // namespace twinforge

#endif  // TWINFORGE_VEHICLE_SUSPENSION_HPP_
