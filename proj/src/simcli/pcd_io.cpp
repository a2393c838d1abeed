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

#include "twinforge/simcli/pcd_io.hpp"

#include <fstream>
#include <string>

#include "csv_util.hpp"
#include "twinforge/common/error.hpp"
#include "twinforge/simcli/artifacts.hpp"

namespace twinforge {

using internal::LinePrefix;
using internal::ParseNumber;
using internal::SplitWhitespace;
using internal::Trim;

void WriteCloud(std::ostream& out, const PointCloud& cloud) {
  const std::size_t n = cloud.points.size();
  out << "# .PCD v0.7 - Point Cloud Data file format\n"
      << "VERSION 0.7\n"
      << "FIELDS x y z\n"
      << "SIZE 4 4 4\n"
      << "TYPE F F F\n"
      << "COUNT 1 1 1\n"
      << "WIDTH " << n << '\n'
      << "HEIGHT 1\n"
      << "VIEWPOINT 0 0 0 1 0 0 0\n"
      << "POINTS " << n << '\n'
      << "DATA ascii\n";
  for (const Vec3& p : cloud.points) {
    // FIELDS are 4-byte floats; 9 digits round-trip a float exactly.
    out << FormatFloat(static_cast<float>(p.x())) << ' '
        << FormatFloat(static_cast<float>(p.y())) << ' '
        << FormatFloat(static_cast<float>(p.z())) << '\n';
  }
}

void save_cloud(const PointCloud& cloud, const std::filesystem::path& path) {
  AtomicFile file(path);
  WriteCloud(file.stream(), cloud);
  file.Commit();
}

PointCloud ParseCloud(std::istream& in) {
  PointCloud cloud;
  std::string raw;
  int line = 0;
  long long points = -1;
  bool data = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = Trim(raw);
    if (text.empty() || text.front() == '#') continue;
    const auto tokens = SplitWhitespace(text);
    if (!data) {
      if (tokens[0] == "FIELDS") {
        if (tokens.size() != 4 || tokens[1] != "x" || tokens[2] != "y" || tokens[3] != "z") {
          throw Error(ErrorCode::kBadFormat, LinePrefix(line) + "only FIELDS x y z supported");
        }
      } else if (tokens[0] == "POINTS") {
        std::int64_t n = 0;
        if (tokens.size() != 2 || !ParseNumber(tokens[1], n) || n < 0) {
          throw Error(ErrorCode::kBadFormat, LinePrefix(line) + "invalid POINTS");
        }
        points = n;
      } else if (tokens[0] == "DATA") {
        if (tokens.size() != 2 || tokens[1] != "ascii") {
          throw Error(ErrorCode::kBadFormat, LinePrefix(line) + "only DATA ascii supported");
        }
        data = true;
      }
      continue;
    }
    Vec3 p;
    if (tokens.size() != 3 || !ParseNumber(tokens[0], p.x()) ||
        !ParseNumber(tokens[1], p.y()) || !ParseNumber(tokens[2], p.z())) {
      throw Error(ErrorCode::kBadFormat, LinePrefix(line) + "expected x y z");
    }
    cloud.points.push_back(p);
  }
  if (!data) throw Error(ErrorCode::kBadFormat, "missing DATA line");
  if (points >= 0 && static_cast<std::size_t>(points) != cloud.points.size()) {
    throw Error(ErrorCode::kBadFormat, "POINTS does not match data rows");
  }
  return cloud;
}

PointCloud load_cloud(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open cloud " + path.string());
  return ParseCloud(in);
}

}  // namespace twinforge
