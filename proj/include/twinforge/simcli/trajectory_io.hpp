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

#ifndef TWINFORGE_SIMCLI_TRAJECTORY_IO_HPP_
#define TWINFORGE_SIMCLI_TRAJECTORY_IO_HPP_

#include <filesystem>
#include <iosfwd>

#include "twinforge/autonomy/trajectory.hpp"

namespace twinforge {

// CSV: header "x,y,yaw,speed", one waypoint per row, then "# loop=true" or
// "# loop=false" (and "# spacing=<m>").
void WriteTrajectory(std::ostream& out, const Trajectory& traj);
void save_trajectory(const Trajectory& traj, const std::filesystem::path& path);

// Missing loop comment reads as loop=false. Errors name the line number;
// a file without rows throws "no waypoints".
Trajectory ParseTrajectory(std::istream& in);
Trajectory load_trajectory(const std::filesystem::path& path);

}  // namespace twinforge

#endif  // TWINFORGE_SIMCLI_TRAJECTORY_IO_HPP_
