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

#ifndef TWINFORGE_SIMCLI_PROFILE_HPP_
#define TWINFORGE_SIMCLI_PROFILE_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "twinforge/autonomy/tracker.hpp"
#include "twinforge/sensors/lidar.hpp"
#include "twinforge/vehicle/vehicle_model.hpp"

namespace twinforge {

struct LidarConfig {
  bool enabled = true;
  bool three_d = false;
  Lidar3DParams params;  // params.planar alone for a 2D unit
};

// Everything a scenario needs to know about one vehicle.
struct VehicleProfile {
  VehicleParams vehicle;
  LidarConfig lidar;
  double waypoint_spacing = 0.5;  // d_wp, m
  double cruise_speed = 1.0;      // m/s, scripted routes
  TrackerConfig tracker;
};

// Corners are laid out from total sprung mass, front share, wheelbase, track
// and COM height. Unknown keys are ignored; malformed values throw
// kBadFormat naming the key.
VehicleProfile ParseProfile(std::string_view json_text);
VehicleProfile LoadProfile(const std::filesystem::path& path);

// A name with a path separator or ".json" suffix is a file; otherwise
// "<dir>/<name>.json" is tried in each search directory in order.
std::filesystem::path ResolveProfile(
    const std::string& name, const std::vector<std::filesystem::path>& search);

}  // namespace twinforge

#endif  // TWINFORGE_SIMCLI_PROFILE_HPP_
