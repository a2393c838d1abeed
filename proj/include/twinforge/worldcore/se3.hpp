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

#ifndef TWINFORGE_WORLDCORE_SE3_HPP_
#define TWINFORGE_WORLDCORE_SE3_HPP_

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace twinforge {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

// Gram-Schmidt on the first two columns; the third is their cross product.
// The result is orthonormal with determinant +1.
Mat3 Renormalize(const Mat3& rotation);

// Rigid-body transform. Maps points from the child frame into the parent
// frame: p_parent = R * p_child + t.
class SE3 {
 public:
  SE3() : rotation_(Mat3::Identity()), translation_(Vec3::Zero()) {}
  SE3(const Mat3& rotation, const Vec3& translation);

  static SE3 Identity() { return SE3(); }
  static SE3 FromTranslation(const Vec3& t) { return SE3(Mat3::Identity(), t); }
  static SE3 FromYaw(double yaw, const Vec3& t = Vec3::Zero());
  // Intrinsic Z-Y-X (yaw, pitch, roll).
  static SE3 FromRollPitchYaw(double roll, double pitch, double yaw,
                              const Vec3& t = Vec3::Zero());

  const Mat3& rotation() const { return rotation_; }
  const Vec3& translation() const { return translation_; }

  // Same rotation, new translation. No renormalization.
  SE3 WithTranslation(const Vec3& t) const {
    SE3 out = *this;
    out.translation_ = t;
    return out;
  }

  SE3 inverse() const;
  Vec3 operator*(const Vec3& point) const {
    return rotation_ * point + translation_;
  }
  Vec3 Rotate(const Vec3& v) const { return rotation_ * v; }
  Mat4 matrix() const;

  double yaw() const;
  // (roll, pitch, yaw) such that R = Rz(yaw) * Ry(pitch) * Rx(roll).
  Vec3 EulerAngles() const;
  Eigen::Quaterniond quaternion() const;

 private:
  Mat3 rotation_;
  Vec3 translation_;
};

// Applies b first, then a.
SE3 compose(const SE3& a, const SE3& b);
inline SE3 operator*(const SE3& a, const SE3& b) { return compose(a, b); }

bool IsValidRotation(const Mat3& rotation, double tolerance = 1e-9);

// Wraps to (-pi, pi].
double NormalizeAngle(double angle);

}  // namespace twinforge

#endif  // TWINFORGE_WORLDCORE_SE3_HPP_
