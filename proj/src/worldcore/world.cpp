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

#include "twinforge/worldcore/world.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include <fmt/format.h>

#include "twinforge/common/error.hpp"

namespace twinforge {
namespace {

double Cross2(const Vec2& a, const Vec2& b) {
  return a.x() * b.y() - a.y() * b.x();
}

}  // namespace

World::World(std::vector<Wall> walls, Bounds bounds)
    : walls_(std::move(walls)), bounds_(bounds) {
  for (const Wall& w : walls_) {
    if (!(w.height > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "wall height must be positive");
    }
    if ((w.b - w.a).norm() <= 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "wall segment has zero length");
    }
  }
}

RayHit raycast(const World& world, const Vec3& origin, const Vec3& direction,
               double r_max) {
  const double norm = direction.norm();
  if (!(norm > 0.0) || !direction.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "degenerate ray");
  }
  if (std::abs(norm - 1.0) > 1e-6) {
    throw Error(ErrorCode::kInvalidArgument, "ray direction must be unit");
  }

  double best = std::numeric_limits<double>::infinity();

  // Ground plane.
  if (direction.z() < 0.0 && origin.z() >= World::ground_z()) {
    const double t = (World::ground_z() - origin.z()) / direction.z();
    if (t >= 0.0 && t <= r_max) best = t;
  }

  // Wall faces. The 3D ray parameter is the distance since |direction| = 1,
  // so solve in the plane using the horizontal part of the direction.
  const Vec2 o(origin.x(), origin.y());
  const Vec2 d(direction.x(), direction.y());
  for (const Wall& w : world.walls()) {
    const Vec2 e = w.b - w.a;
    const double denom = Cross2(d, e);
    if (denom == 0.0) continue;  // parallel, or a vertical ray
    const Vec2 ao = w.a - o;
    const double t = Cross2(ao, e) / denom;
    const double s = Cross2(ao, d) / denom;
    if (t < 0.0 || t > r_max || t >= best || s < 0.0 || s > 1.0) continue;
    const double z = origin.z() + t * direction.z();
    if (z < World::ground_z() || z > w.height) continue;
    best = t;
  }

  RayHit hit;
  if (std::isfinite(best)) {
    hit.hit = true;
    hit.point = origin + best * direction;
    hit.distance = (hit.point - origin).norm();
  }
  return hit;
}

World ParseWorld(std::istream& in) {
  std::vector<Wall> walls;
  Bounds bounds;
  bool have_bounds = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag)) continue;
    if (tag == "WALL") {
      Wall w;
      if (!(fields >> w.a.x() >> w.a.y() >> w.b.x() >> w.b.y() >> w.height)) {
        throw Error(ErrorCode::kBadFormat,
                    fmt::format("bad WALL record at line {}", line_no));
      }
      walls.push_back(w);
    } else if (tag == "BOUNDS") {
      if (!(fields >> bounds.xmin >> bounds.ymin >> bounds.xmax >>
            bounds.ymax)) {
        throw Error(ErrorCode::kBadFormat,
                    fmt::format("bad BOUNDS record at line {}", line_no));
      }
      have_bounds = true;
    } else {
      throw Error(ErrorCode::kBadFormat,
                  fmt::format("unknown record '{}' at line {}", tag, line_no));
    }
    std::string extra;
    if (fields >> extra) {
      throw Error(ErrorCode::kBadFormat,
                  fmt::format("trailing data at line {}", line_no));
    }
  }
  if (!have_bounds) {
    // Default to the walls' bounding box.
    bounds = {0.0, 0.0, 0.0, 0.0};
    bool first = true;
    for (const Wall& w : walls) {
      for (const Vec2& p : {w.a, w.b}) {
        if (first) {
          bounds = {p.x(), p.y(), p.x(), p.y()};
          first = false;
        }
        bounds.xmin = std::min(bounds.xmin, p.x());
        bounds.ymin = std::min(bounds.ymin, p.y());
        bounds.xmax = std::max(bounds.xmax, p.x());
        bounds.ymax = std::max(bounds.ymax, p.y());
      }
    }
  }
  return World(std::move(walls), bounds);
}

World LoadWorld(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kNotFound,
                fmt::format("cannot open world file '{}'", path.string()));
  }
  return ParseWorld(in);
}

void WriteWorld(const World& world, std::ostream& out) {
  const Bounds& b = world.bounds();
  out << fmt::format("BOUNDS {:.17g} {:.17g} {:.17g} {:.17g}\n", b.xmin,
                     b.ymin, b.xmax, b.ymax);
  for (const Wall& w : world.walls()) {
    out << fmt::format("WALL {:.17g} {:.17g} {:.17g} {:.17g} {:.17g}\n",
                       w.a.x(), w.a.y(), w.b.x(), w.b.y(), w.height);
  }
}

World MakeRectangularRoom(double xmin, double ymin, double xmax, double ymax,
                          double wall_height, double margin) {
  const Vec2 p00(xmin, ymin);
  const Vec2 p10(xmax, ymin);
  const Vec2 p11(xmax, ymax);
  const Vec2 p01(xmin, ymax);
  std::vector<Wall> walls = {{p00, p10, wall_height},
                             {p10, p11, wall_height},
                             {p11, p01, wall_height},
                             {p01, p00, wall_height}};
  return World(std::move(walls), {xmin - margin, ymin - margin,
                                  xmax + margin, ymax + margin});
}

}  // namespace twinforge
