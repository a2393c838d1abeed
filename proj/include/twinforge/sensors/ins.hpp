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

#ifndef TWINFORGE_SENSORS_INS_HPP_
#define TWINFORGE_SENSORS_INS_HPP_

#include <array>

#include "twinforge/sensors/noise.hpp"
#include "twinforge/worldcore/rigid_body.hpp"

namespace twinforge {

struct ImuReading {
  Vec3 linear_acceleration = Vec3::Zero();  // m/s^2, body frame
  Vec3 angular_velocity = Vec3::Zero();     // rad/s, body frame
  Vec3 euler = Vec3::Zero();                // roll, pitch, yaw (rad)
  std::array<double, 4> quaternion{1.0, 0.0, 0.0, 0.0};  // q0 (w), q1, q2, q3
};

struct InsReading {
  Vec3 position = Vec3::Zero();  // IPS, world frame
  ImuReading imu;
};

struct InsConfig {
  // Specific force (what a physical IMU reports). false gives the kinematic
  // acceleration only.
  bool gravity_inclusive = true;
  double position_sigma = 0.0;
  double accel_sigma = 0.0;
  double gyro_sigma = 0.0;
};

// Acceleration is the body-frame finite difference of the world velocity over
// dt, plus the gravity reaction when gravity_inclusive.
InsReading ins_read(const RigidBodyState& body, const Vec3& previous_velocity,
                    double dt, const InsConfig& config, GaussianNoise& noise);

}  // namespace twinforge

#endif  // TWINFORGE_SENSORS_INS_HPP_
