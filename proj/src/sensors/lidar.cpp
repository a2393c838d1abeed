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

#include "twinforge/sensors/lidar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "twinforge/common/error.hpp"

namespace twinforge {
namespace {

std::size_t GridCount(double lo, double hi, double step) {
  return static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
}

bool IsIntegralGrid(double lo, double hi, double step) {
  const double n = (hi - lo) / step;
  return std::abs(n - std::round(n)) <= 1e-9 * std::max(1.0, std::abs(n));
}

}  // namespace

std::size_t Lidar2DParams::beam_count() const {
  return GridCount(angle_min, angle_max, angle_increment);
}

std::size_t Lidar3DParams::channel_count() const {
  return GridCount(channel_min, channel_max, channel_increment);
}

void Validate(const Lidar2DParams& p) {
  if (!(p.range_min < p.range_max) || !(p.range_min >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "lidar requires 0 <= r_min < r_max");
  }
  if (!(p.angle_increment > 0.0) || !(p.angle_max >= p.angle_min)) {
    throw Error(ErrorCode::kInvalidArgument, "lidar angular range invalid");
  }
  if (!IsIntegralGrid(p.angle_min, p.angle_max, p.angle_increment)) {
    throw Error(ErrorCode::kInvalidArgument,
                "lidar angular span is not a multiple of the resolution");
  }
}

void Validate(const Lidar3DParams& p) {
  Validate(p.planar);
  if (!(p.channel_increment > 0.0) || !(p.channel_max >= p.channel_min) ||
      !IsIntegralGrid(p.channel_min, p.channel_max, p.channel_increment)) {
    throw Error(ErrorCode::kInvalidArgument, "lidar channel grid invalid");
  }
}

Scan2D lidar2d_scan(const World& world, const SE3& vehicle_pose,
                    const Lidar2DParams& params, double stamp) {
  const SE3 sensor = vehicle_pose * params.mount;
  const std::size_t n = params.beam_count();
  Scan2D scan;
  scan.ranges.resize(n);
  scan.angle_min = params.angle_min;
  scan.angle_increment = params.angle_increment;
  scan.range_min = params.range_min;
  scan.range_max = params.range_max;
  scan.stamp = stamp;
  scan.pose = sensor;
  const Vec3 origin = sensor.translation();
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = params.angle(i);
    const Vec3 dir = sensor.Rotate(Vec3(std::cos(theta), std::sin(theta), 0.0));
    const RayHit hit = raycast(world, origin, dir, params.range_max);
    scan.ranges[i] = hit.hit && hit.distance >= params.range_min
                         ? hit.distance
                         : std::numeric_limits<double>::infinity();
  }
  return scan;
}

PointCloud lidar3d_scan(const World& world, const SE3& vehicle_pose,
                        const Lidar3DParams& params, double stamp,
                        unsigned threads) {
  const SE3 sensor = vehicle_pose * params.planar.mount;
  const std::size_t channels = params.channel_count();
  const std::size_t beams = params.planar.beam_count();
  const Vec3 origin = sensor.translation();

  std::vector<std::vector<Vec3>> per_channel(channels);
  auto scan_channel = [&](std::size_t j) {
    const double phi = params.channel(j);
    auto& out = per_channel[j];
    for (std::size_t i = 0; i < beams; ++i) {
      const double theta = params.planar.angle(i);
      const Vec3 local(std::cos(theta) * std::cos(phi),
                       std::sin(theta) * std::cos(phi), -std::sin(phi));
      const RayHit hit =
          raycast(world, origin, sensor.Rotate(local), params.planar.range_max);
      if (hit.hit && hit.distance >= params.planar.range_min) {
        out.push_back(hit.distance * local);
      }
    }
  };

  const unsigned workers =
      std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(channels, 1)));
  if (workers == 1) {
    for (std::size_t j = 0; j < channels; ++j) scan_channel(j);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t j = w; j < channels; j += workers) scan_channel(j);
      });
    }
  }

  PointCloud cloud;
  cloud.stamp = stamp;
  for (const auto& pts : per_channel) {
    cloud.points.insert(cloud.points.end(), pts.begin(), pts.end());
  }
  return cloud;
}

}  // namespace twinforge
