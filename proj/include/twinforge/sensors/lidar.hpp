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

#ifndef TWINFORGE_SENSORS_LIDAR_HPP_
#define TWINFORGE_SENSORS_LIDAR_HPP_

#include <cstddef>
#include <vector>

#include "twinforge/worldcore/world.hpp"

namespace twinforge {

struct Lidar2DParams {
  SE3 mount;  // vehicle -> lidar
  double range_min = 0.1;
  double range_max = 10.0;
  double angle_min = -3.14159265358979323846;
  double angle_max = 3.14159265358979323846 - 0.017453292519943295;
  double angle_increment = 0.017453292519943295;
  double update_rate = 10.0;  // Hz

  // round((angle_max - angle_min) / angle_increment) + 1.
  std::size_t beam_count() const;
  double angle(std::size_t i) const {
    return angle_min + static_cast<double>(i) * angle_increment;
  }
};

struct Lidar3DParams {
  Lidar2DParams planar;
  double channel_min = -0.2617993877991494;  // phi_min, rad
  double channel_max = 0.2617993877991494;   // phi_max, rad
  double channel_increment = 0.03490658503988659;  // phi_res, rad

  std::size_t channel_count() const;
  double channel(std::size_t j) const {
    return channel_min + static_cast<double>(j) * channel_increment;
  }
};

// Checks the angular grids are integral (1e-9) and ranges ordered.
void Validate(const Lidar2DParams& params);
void Validate(const Lidar3DParams& params);

// Ranges use +inf for a miss or a return closer than range_min.
struct Scan2D {
  std::vector<double> ranges;
  double angle_min = 0.0;
  double angle_increment = 0.0;
  double range_min = 0.0;
  double range_max = 0.0;
  double stamp = 0.0;
  SE3 pose;  // world -> sensor at capture
};

struct PointCloud {
  std::vector<Vec3> points;  // sensor frame
  double stamp = 0.0;
};

Scan2D lidar2d_scan(const World& world, const SE3& vehicle_pose,
                    const Lidar2DParams& params, double stamp = 0.0);

// Channel-major then azimuth ordering, independent of `threads`.
PointCloud lidar3d_scan(const World& world, const SE3& vehicle_pose,
                        const Lidar3DParams& params, double stamp = 0.0,
                        unsigned threads = 1);

}  // namespace twinforge

#endif  // TWINFORGE_SENSORS_LIDAR_HPP_
