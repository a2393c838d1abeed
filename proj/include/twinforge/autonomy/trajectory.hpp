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

#ifndef TWINFORGE_AUTONOMY_TRAJECTORY_HPP_
#define TWINFORGE_AUTONOMY_TRAJECTORY_HPP_

#include <vector>

#include "twinforge/autonomy/occupancy_grid.hpp"

namespace twinforge {

struct Waypoint {
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;
  double speed = 0.0;
  friend bool operator==(const Waypoint&, const Waypoint&) = default;
};

struct Trajectory {
  std::vector<Waypoint> waypoints;
  bool loop = false;
  double spacing = 0.5;  // d_wp, m
};

// Appends the first pose unconditionally, later poses only once they are at
// least `spacing` from the last waypoint. Returns whether it appended.
bool record_waypoint(Trajectory& traj, const Pose2D& pose, double speed);

}  // namespace twinforge

#endif  // TWINFORGE_AUTONOMY_TRAJECTORY_HPP_
