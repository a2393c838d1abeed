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

#ifndef TWINFORGE_WORLDCORE_WORLD_HPP_
#define TWINFORGE_WORLDCORE_WORLD_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "twinforge/worldcore/se3.hpp"

namespace twinforge {

// A vertical rectangular face: the segment a-b extruded from the ground up to
// `height`.
struct Wall {
  Vec2 a = Vec2::Zero();
  Vec2 b = Vec2::Zero();
  double height = 0.0;
};

struct Bounds {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  bool Contains(const Vec2& p) const {
    return p.x() >= xmin && p.x() <= xmax && p.y() >= ymin && p.y() <= ymax;
  }
};

// 2.5D environment: extruded wall segments over a flat ground plane at z = 0.
// Immutable after construction; safe for concurrent ray queries.
class World {
 public:
  World() = default;
  World(std::vector<Wall> walls, Bounds bounds);

  const std::vector<Wall>& walls() const { return walls_; }
  const Bounds& bounds() const { return bounds_; }
  static constexpr double ground_z() { return 0.0; }

 private:
  std::vector<Wall> walls_;
  Bounds bounds_;
};

struct RayHit {
  bool hit = false;
  double distance = 0.0;
  Vec3 point = Vec3::Zero();
};

// Nearest intersection with any wall face or the ground plane within r_max.
// `direction` must be unit length (1e-6).
RayHit raycast(const World& world, const Vec3& origin, const Vec3& direction,
               double r_max);

// World file: `WALL x1 y1 x2 y2 height`, `BOUNDS xmin ymin xmax ymax`, `#`
// comments, blank lines ignored.
World ParseWorld(std::istream& in);
World LoadWorld(const std::filesystem::path& path);
void WriteWorld(const World& world, std::ostream& out);

// Closed axis-aligned rectangle of walls.
World MakeRectangularRoom(double xmin, double ymin, double xmax, double ymax,
                          double wall_height, double margin = 1.0);

}  // namespace twinforge

#endif  // TWINFORGE_WORLDCORE_WORLD_HPP_
