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

#include "twinforge/worldcore/rigid_body.hpp"

#include <cmath>

#include "twinforge/common/error.hpp"

namespace twinforge {

MassProperties aggregate_inertia(std::span<const PointMass> masses) {
  if (masses.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no sprung masses");
  }
  MassProperties out;
  Vec3 moment = Vec3::Zero();
  for (const PointMass& m : masses) {
    if (!(m.mass > 0.0) || !m.position.allFinite()) {
      throw Error(ErrorCode::kInvalidArgument, "invalid sprung mass");
    }
    out.mass += m.mass;
    moment += m.mass * m.position;
  }
  out.center_of_mass = moment / out.mass;
  for (const PointMass& m : masses) {
    const Vec3 r = m.position - out.center_of_mass;
    out.inertia.x() += m.mass * (r.y() * r.y() + r.z() * r.z());
    out.inertia.y() += m.mass * (r.x() * r.x() + r.z() * r.z());
    out.inertia.z() += m.mass * (r.x() * r.x() + r.y() * r.y());
  }
  return out;
}

RigidBodyState step_rigid_body(const RigidBodyState& state,
                               const MassProperties& inertia, const Vec3& force,
                               const Vec3& torque, double dt) {
  if (!force.allFinite() || !torque.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "non-finite input");
  }
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "dt must be positive");
  }
  if (!(inertia.mass > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "no sprung masses");
  }

  RigidBodyState next = state;
  next.linear_velocity = state.linear_velocity + (force / inertia.mass) * dt;

  // Euler's equations with a diagonal tensor. An axis with zero inertia can
  // only carry zero torque.
  const Vec3& w = state.angular_velocity;
  const Vec3 iw = inertia.inertia.cwiseProduct(w);
  const Vec3 net = torque - w.cross(iw);
  Vec3 alpha = Vec3::Zero();
  for (int axis = 0; axis < 3; ++axis) {
    if (inertia.inertia[axis] > 0.0) {
      alpha[axis] = net[axis] / inertia.inertia[axis];
    } else if (net[axis] != 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "singular inertia");
    }
  }
  next.angular_velocity = w + alpha * dt;

  const Vec3 rotation_vector = next.angular_velocity * dt;
  const double angle = rotation_vector.norm();
  const Vec3 position = state.pose.translation() + next.linear_velocity * dt;
  if (angle > 0.0) {
    const Mat3 delta =
        Eigen::AngleAxisd(angle, rotation_vector / angle).toRotationMatrix();
    next.pose = SE3(state.pose.rotation() * delta, position);
  } else {
    next.pose = state.pose.WithTranslation(position);
  }
  return next;
}

}  // namespace twinforge
