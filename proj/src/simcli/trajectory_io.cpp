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

#include "twinforge/simcli/trajectory_io.hpp"

#include <fstream>
#include <string>

#include "csv_util.hpp"
#include "twinforge/common/error.hpp"
#include "twinforge/simcli/artifacts.hpp"

namespace twinforge {

using internal::LinePrefix;
using internal::ParseNumber;
using internal::SplitFields;
using internal::Trim;

void WriteTrajectory(std::ostream& out, const Trajectory& traj) {
  out << "x,y,yaw,speed\n";
  for (const Waypoint& w : traj.waypoints) {
    out << FormatDouble(w.x) << ',' << FormatDouble(w.y) << ','
        << FormatDouble(w.yaw) << ',' << FormatDouble(w.speed) << '\n';
  }
  out << "# loop=" << (traj.loop ? "true" : "false") << '\n';
  out << "# spacing=" << FormatDouble(traj.spacing) << '\n';
}

void save_trajectory(const Trajectory& traj, const std::filesystem::path& path) {
  AtomicFile file(path);
  WriteTrajectory(file.stream(), traj);
  file.Commit();
}

Trajectory ParseTrajectory(std::istream& in) {
  Trajectory traj;
  std::string raw;
  int line = 0;
  bool header_seen = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = Trim(raw);
    if (text.empty()) continue;
    if (text.front() == '#') {
      const std::string_view body = Trim(text.substr(1));
      if (body == "loop=true") {
        traj.loop = true;
      } else if (body == "loop=false") {
        traj.loop = false;
      } else if (body.starts_with("spacing=")) {
        double d = 0.0;
        if (!ParseNumber(Trim(body.substr(8)), d) || !(d > 0.0)) {
          throw Error(ErrorCode::kBadFormat, LinePrefix(line) + "invalid spacing comment");
        }
        traj.spacing = d;
      }
      continue;
    }
    if (!header_seen && text == "x,y,yaw,speed") {
      header_seen = true;
      continue;
    }
    const auto fields = SplitFields(text, ',');
    Waypoint w;
    if (fields.size() != 4 || !ParseNumber(fields[0], w.x) ||
        !ParseNumber(fields[1], w.y) || !ParseNumber(fields[2], w.yaw) ||
        !ParseNumber(fields[3], w.speed)) {
      throw Error(ErrorCode::kBadFormat,
                  LinePrefix(line) + "expected x,y,yaw,speed numbers");
    }
    header_seen = true;
    traj.waypoints.push_back(w);
  }
  if (traj.waypoints.empty()) throw Error(ErrorCode::kBadFormat, "no waypoints");
  return traj;
}

Trajectory load_trajectory(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open trajectory " + path.string());
  return ParseTrajectory(in);
}

}  // namespace twinforge
