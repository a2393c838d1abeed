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

#ifndef TWINFORGE_WORLDCORE_RIGID_BODY_HPP_
#define TWINFORGE_WORLDCORE_RIGID_BODY_HPP_

#include <span>
#include <vector>

#include "twinforge/worldcore/se3.hpp"

namespace twinforge {

// One lumped sprung mass, positioned in the body frame.
struct PointMass {
  double mass = 0.0;  // kg
  Vec3 position = Vec3::Zero();  // m
};

using SprungMassSet = std::vector<PointMass>;

// Lumped properties of a sprung-mass set. The inertia tensor is diagonal:
// per-axis point-mass sums about the centre of mass.
struct MassProperties {
  double mass = 0.0;                  // kg
  Vec3 center_of_mass = Vec3::Zero();  // m, body frame
  Vec3 inertia = Vec3::Zero();        // kg m^2 about x, y, z through the COM
};

MassProperties aggregate_inertia(std::span<const PointMass> masses);

struct RigidBodyState {
  SE3 pose;
  Vec3 linear_velocity = Vec3::Zero();   // m/s, world frame
  Vec3 angular_velocity = Vec3::Zero();  // rad/s, body frame
};

// Semi-implicit Euler: velocities first from the accelerations, then the pose
// from the new velocities. Force is in the world frame, torque in the body
// frame, both acting at the centre of mass.
RigidBodyState step_rigid_body(const RigidBodyState& state,
                               const MassProperties& inertia, const Vec3& force,
                               const Vec3& torque, double dt);

}  // namespace twinforge

#endif  // TWINFORGE_WORLDCORE_RIGID_BODY_HPP_
