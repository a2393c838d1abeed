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

#include "twinforge/worldcore/se3.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace twinforge {

Mat3 Renormalize(const Mat3& rotation) {
  Vec3 x = rotation.col(0).normalized();
  Vec3 y = rotation.col(1) - x.dot(rotation.col(1)) * x;
  y.normalize();
  Mat3 out;
  out.col(0) = x;
  out.col(1) = y;
  out.col(2) = x.cross(y);
  return out;
}

SE3::SE3(const Mat3& rotation, const Vec3& translation)
    : rotation_(Renormalize(rotation)), translation_(translation) {}

SE3 SE3::FromYaw(double yaw, const Vec3& t) {
  return SE3(Eigen::AngleAxisd(yaw, Vec3::UnitZ()).toRotationMatrix(), t);
}

SE3 SE3::FromRollPitchYaw(double roll, double pitch, double yaw,
                          const Vec3& t) {
  const Mat3 r = (Eigen::AngleAxisd(yaw, Vec3::UnitZ()) *
                  Eigen::AngleAxisd(pitch, Vec3::UnitY()) *
                  Eigen::AngleAxisd(roll, Vec3::UnitX()))
                     .toRotationMatrix();
  return SE3(r, t);
}

SE3 SE3::inverse() const {
  SE3 out;
  out.rotation_ = rotation_.transpose();
  out.translation_ = -(out.rotation_ * translation_);
  return out;
}

Mat4 SE3::matrix() const {
  Mat4 m = Mat4::Identity();
  m.topLeftCorner<3, 3>() = rotation_;
  m.topRightCorner<3, 1>() = translation_;
  return m;
}

double SE3::yaw() const { return std::atan2(rotation_(1, 0), rotation_(0, 0)); }

Vec3 SE3::EulerAngles() const {
  const Mat3& r = rotation_;
  const double pitch = std::asin(std::clamp(-r(2, 0), -1.0, 1.0));
  double roll;
  double yaw;
  if (std::abs(r(2, 0)) < 1.0 - 1e-12) {
    roll = std::atan2(r(2, 1), r(2, 2));
    yaw = std::atan2(r(1, 0), r(0, 0));
  } else {
    // Gimbal lock: fold everything into yaw.
    roll = 0.0;
    yaw = std::atan2(-r(0, 1), r(1, 1));
  }
  return {roll, pitch, yaw};
}

Eigen::Quaterniond SE3::quaternion() const {
  Eigen::Quaterniond q(rotation_);
  q.normalize();
  if (q.w() < 0.0) q.coeffs() *= -1.0;
  return q;
}

SE3 compose(const SE3& a, const SE3& b) {
  return SE3(a.rotation() * b.rotation(),
             a.rotation() * b.translation() + a.translation());
}

bool IsValidRotation(const Mat3& rotation, double tolerance) {
  const Mat3 err = rotation.transpose() * rotation - Mat3::Identity();
  return err.cwiseAbs().maxCoeff() <= tolerance &&
         std::abs(rotation.determinant() - 1.0) <= tolerance;
}

double NormalizeAngle(double angle) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double a = std::fmod(angle + std::numbers::pi, kTwoPi);
  if (a <= 0.0) a += kTwoPi;
  return a - std::numbers::pi;
}

}  // namespace twinforge
