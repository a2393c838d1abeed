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

#include "twinforge/sensors/camera.hpp"

#include <cmath>

#include "twinforge/common/error.hpp"

namespace twinforge {

void Validate(const CameraParams& p) {
  if (!(p.near > 0.0 && p.near < p.far)) {
    throw Error(ErrorCode::kInvalidArgument, "camera requires 0 < N < F");
  }
  if (!(p.focal > 0.0) || !(p.sensor_width > 0.0) || !(p.sensor_height > 0.0) ||
      p.width_px <= 0 || p.height_px <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "camera parameters invalid");
  }
}

Mat4 ViewMatrix(const SE3& camera_pose) { return camera_pose.inverse().matrix(); }

Mat4 ProjectionMatrix(const CameraParams& p) {
  const double n = p.near;
  const double f = p.far;
  Mat4 m = Mat4::Zero();
  m(0, 0) = p.focal;
  m(1, 1) = p.focal / p.aspect();
  m(2, 2) = -(f + n) / (f - n);
  m(2, 3) = -2.0 * f * n / (f - n);
  m(3, 2) = -1.0;
  return m;
}

std::optional<Pixel> camera_project(const Vec3& world_point,
                                    const SE3& camera_pose,
                                    const CameraParams& params) {
  const Eigen::Vector4d w(world_point.x(), world_point.y(), world_point.z(), 1.0);
  const Eigen::Vector4d c =
      ProjectionMatrix(params) * (ViewMatrix(camera_pose) * w);
  const double wc = c.w();
  if (wc == 0.0) return std::nullopt;
  // w_c is the depth in front of the camera. The slack keeps points that lie
  // on the frustum faces inside despite rounding.
  constexpr double kSlack = 1e-12;
  if (wc < params.near * (1.0 - kSlack) || wc > params.far * (1.0 + kSlack)) {
    return std::nullopt;
  }
  const double x = c.x() / wc;
  const double y = c.y() / wc;
  if (std::abs(x) > 1.0 + kSlack || std::abs(y) > 1.0 + kSlack) {
    return std::nullopt;
  }
  return Pixel{(x + 1.0) / 2.0 * params.width_px,
               (1.0 - y) / 2.0 * params.height_px};
}

}  // namespace twinforge
