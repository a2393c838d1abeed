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

#include "twinforge/autonomy/scan_reduction.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "twinforge/common/error.hpp"

namespace twinforge {

Scan2D pcd_to_scan(const PointCloud& cloud, double z_lo, double z_hi,
                   const Lidar2DParams& params, const SE3& sensor_pose) {
  if (!(z_lo < z_hi)) {
    throw Error(ErrorCode::kInvalidArgument, "z band requires z_lo < z_hi");
  }
  Validate(params);
  const std::size_t n = params.beam_count();
  const auto bins = static_cast<long long>(n);
  const double res = params.angle_increment;
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  const bool full_turn = static_cast<double>(n) * res >= kTwoPi - 1e-9;

  Scan2D scan;
  scan.ranges.assign(n, std::numeric_limits<double>::infinity());
  scan.angle_min = params.angle_min;
  scan.angle_increment = res;
  scan.range_min = params.range_min;
  scan.range_max = params.range_max;
  scan.stamp = cloud.stamp;
  scan.pose = sensor_pose;

  for (const Vec3& p : cloud.points) {
    if (!(p.z() >= z_lo && p.z() <= z_hi)) continue;
    const double range = std::hypot(p.x(), p.y());
    if (range == 0.0) continue;
    const double a = std::atan2(p.y(), p.x());
    long long idx = std::llround((a - params.angle_min) / res);
    if (full_turn) {
      idx = ((idx % bins) + bins) % bins;
    } else if (idx < 0 || idx >= bins) {
      const double alt = a + (idx < 0 ? kTwoPi : -kTwoPi);
      idx = std::llround((alt - params.angle_min) / res);
      if (idx < 0 || idx >= bins) continue;
    }
    double& slot = scan.ranges[static_cast<std::size_t>(idx)];
    if (range < slot) slot = range;
  }
  return scan;
}

}  // namespace twinforge
