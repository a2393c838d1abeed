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

#ifndef TWINFORGE_SENSORS_CAMERA_HPP_
#define TWINFORGE_SENSORS_CAMERA_HPP_

#include <optional>

#include "twinforge/worldcore/se3.hpp"

namespace twinforge {

// Pinhole camera in the graphics convention: the camera looks along its local
// -z axis with +y up and +x to the right.
struct CameraParams {
  double focal = 1.0;          // f, the projection element 2N / (R - L)
  double sensor_width = 36.0;  // s_x, mm
  double sensor_height = 24.0;  // s_y, mm
  int width_px = 1280;
  int height_px = 720;
  double near = 0.1;  // N, m
  double far = 100.0;  // F, m

  double aspect() const { return sensor_height / sensor_width; }  // a
};

void Validate(const CameraParams& params);

struct Pixel {
  double u = 0.0;
  double v = 0.0;
};

// V = inverse(world_T_camera).
Mat4 ViewMatrix(const SE3& camera_pose);
// Symmetric frustum: diag(f, f / a, -(F + N)/(F - N)) with the usual
// perspective row.
Mat4 ProjectionMatrix(const CameraParams& params);

// C = P V W, divided by w_c into NDC, then mapped onto the viewport. Returns
// nullopt outside the frustum (behind the near plane, past the far plane,
// |NDC| > 1) or when w_c = 0.
std::optional<Pixel> camera_project(const Vec3& world_point,
                                    const SE3& camera_pose,
                                    const CameraParams& params);

}  // namespace twinforge

#endif  // TWINFORGE_SENSORS_CAMERA_HPP_
