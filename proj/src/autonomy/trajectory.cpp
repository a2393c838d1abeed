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

#include "twinforge/autonomy/trajectory.hpp"

#include <cmath>

namespace twinforge {

bool record_waypoint(Trajectory& traj, const Pose2D& pose, double speed) {
  if (!traj.waypoints.empty()) {
    const Waypoint& last = traj.waypoints.back();
    if (std::hypot(pose.x - last.x, pose.y - last.y) < traj.spacing) return false;
  }
  traj.waypoints.push_back({pose.x, pose.y, pose.yaw, speed});
  return true;
}

}  // namespace twinforge
