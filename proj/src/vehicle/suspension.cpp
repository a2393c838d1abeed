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

#include "twinforge/vehicle/suspension.hpp"

#include <algorithm>
#include <cmath>

#include "twinforge/common/error.hpp"

namespace twinforge {

SpringDamper spring_damper(double sprung_mass, const SuspensionParams& params) {
  SpringDamper out;
  out.stiffness = params.stiffness.value_or(
      sprung_mass * params.natural_frequency * params.natural_frequency);
  if (!(out.stiffness > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid stiffness");
  }
  out.damping = params.damping.value_or(
      2.0 * params.damping_ratio * std::sqrt(out.stiffness * sprung_mass));
  return out;
}

double force_application_point(double z_com, double z_wheel,
                               double wheel_radius, double force_offset) {
  return z_com - z_wheel + wheel_radius - force_offset;
}

double suspension_travel(double sprung_mass, double equilibrium,
                         double stiffness) {
  return sprung_mass * kGravity / (equilibrium * stiffness);
}

double normalized_travel(double contact_z, double wheel_radius,
                         double travel) {
  return (-contact_z - wheel_radius) / travel;
}

AntiRollForces anti_roll(double left_travel, double right_travel,
                         double stiffness, bool both_grounded) {
  if (!both_grounded) return {};
  return {stiffness * (right_travel - left_travel),
          stiffness * (left_travel - right_travel)};
}

SuspensionResult suspension_step(const WheelState& wheel, double sprung_mass,
                                 double external_force, double anti_roll_force,
                                 const CornerGeometry& geometry,
                                 const SuspensionParams& params, double dt) {
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "dt must be positive");
  }
  const SpringDamper sd = spring_damper(sprung_mass, params);
  const double travel =
      suspension_travel(sprung_mass, params.equilibrium, sd.stiffness);

  // Unsprung side is ground-bound: z = z' = 0.
  const double z = wheel.suspension_displacement;
  const double z_rate = wheel.suspension_velocity;
  const double accel =
      (external_force - anti_roll_force - sd.damping * z_rate -
       sd.stiffness * z) /
      sprung_mass;

  SuspensionResult out;
  out.wheel = wheel;
  out.wheel.suspension_velocity = z_rate + accel * dt;
  out.wheel.suspension_displacement = z + out.wheel.suspension_velocity * dt;

  const double spring = sd.stiffness * out.wheel.suspension_displacement +
                        sd.damping * out.wheel.suspension_velocity;
  out.force = sprung_mass * kGravity + spring;
  out.wheel.load =
      std::max(0.0, out.force + geometry.wheel_mass * kGravity);

  const double sag = sprung_mass * kGravity / sd.stiffness;
  const double extension = travel - sag - out.wheel.suspension_displacement;
  out.contact_z = -(geometry.wheel_radius + extension);
  out.grounded = extension >= 0.0 && extension <= travel;
  out.application_point =
      force_application_point(geometry.z_com, geometry.z_wheel,
                              geometry.wheel_radius, params.force_offset);
  return out;
}

}  // namespace twinforge
