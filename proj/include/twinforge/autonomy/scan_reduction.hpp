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

#ifndef TWINFORGE_AUTONOMY_SCAN_REDUCTION_HPP_
#define TWINFORGE_AUTONOMY_SCAN_REDUCTION_HPP_

#include "twinforge/sensors/lidar.hpp"

namespace twinforge {

// Flattens the points whose sensor-frame z lies in [z_lo, z_hi] into the
// angular bins of `params`. Each bin holds the minimum planar range; empty
// bins are +inf. A bin grid spanning a full turn wraps.
Scan2D pcd_to_scan(const PointCloud& cloud, double z_lo, double z_hi,
                   const Lidar2DParams& params, const SE3& sensor_pose = {});

}  // namespace twinforge

#endif  // TWINFORGE_AUTONOMY_SCAN_REDUCTION_HPP_
