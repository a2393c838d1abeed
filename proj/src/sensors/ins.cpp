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

#include "twinforge/sensors/ins.hpp"

#include "twinforge/common/error.hpp"
#include "twinforge/worldcore/constants.hpp"

namespace twinforge {

InsReading ins_read(const RigidBodyState& body, const Vec3& previous_velocity,
                    double dt, const InsConfig& config, GaussianNoise& noise) {
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "dt must be positive");
  }
  const Mat3& r = body.pose.rotation();
  Vec3 accel_world = (body.linear_velocity - previous_velocity) / dt;
  if (config.gravity_inclusive) accel_world.z() += kGravity;

  InsReading out;
  const Vec3& t = body.pose.translation();
  for (int i = 0; i < 3; ++i) {
    out.position[i] = noise.Apply(t[i], config.position_sigma);
  }
  const Vec3 accel_body = r.transpose() * accel_world;
  for (int i = 0; i < 3; ++i) {
    out.imu.linear_acceleration[i] = noise.Apply(accel_body[i], config.accel_sigma);
    out.imu.angular_velocity[i] =
        noise.Apply(body.angular_velocity[i], config.gyro_sigma);
  }
  out.imu.euler = body.pose.EulerAngles();
  const Eigen::Quaterniond q = body.pose.quaternion();
  out.imu.quaternion = {q.w(), q.x(), q.y(), q.z()};
  return out;
}

}  // namespace twinforge
