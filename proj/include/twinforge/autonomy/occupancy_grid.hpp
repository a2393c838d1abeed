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

#ifndef TWINFORGE_AUTONOMY_OCCUPANCY_GRID_HPP_
#define TWINFORGE_AUTONOMY_OCCUPANCY_GRID_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "twinforge/sensors/lidar.hpp"
#include "twinforge/worldcore/se3.hpp"

namespace twinforge {

struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;
};

Pose2D ToPose2D(const SE3& pose);

struct CellIndex {
  int x = 0;
  int y = 0;
  friend bool operator==(CellIndex, CellIndex) = default;
};

enum class CellClass : std::uint8_t { kUnknown = 0, kFree = 1, kOccupied = 2 };

struct ClassThresholds {
  double occupied = 0.5;  // log-odds above -> occupied
  double free = -0.5;     // log-odds below -> free
};

struct LogOddsParams {
  double hit = 0.85;  // l_occ
  double miss = 0.4;  // l_free
};

// Inclusive cell rectangle.
struct CellRect {
  int x0 = 0;
  int y0 = 0;
  int x1 = -1;
  int y1 = -1;

  bool empty() const { return x1 < x0 || y1 < y0; }
  int width() const { return empty() ? 0 : x1 - x0 + 1; }
  int height() const { return empty() ? 0 : y1 - y0 + 1; }
  void Expand(CellIndex c);
};

// Log-odds grid. `origin` is the pose of the outer corner of cell (0, 0);
// cell (i, j) spans [i, i+1) x [j, j+1) resolutions along the origin axes.
// Values always stay within [min_log_odds, max_log_odds].
class OccupancyGrid {
 public:
  OccupancyGrid() = default;
  OccupancyGrid(int width, int height, double resolution, Pose2D origin,
                double min_log_odds = -4.0, double max_log_odds = 4.0);

  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }
  const Pose2D& origin() const { return origin_; }
  double min_log_odds() const { return min_; }
  double max_log_odds() const { return max_; }

  bool Contains(CellIndex c) const {
    return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
  }
  double at(CellIndex c) const { return cells_[Offset(c)]; }
  void Set(CellIndex c, double log_odds);
  void Add(CellIndex c, double delta) { Set(c, at(c) + delta); }

  // Continuous grid coordinates (cells) of a world point.
  Vec2 WorldToGrid(const Vec2& p) const;
  Vec2 GridToWorld(const Vec2& g) const;
  std::optional<CellIndex> WorldToCell(const Vec2& p) const;
  Vec2 CellCenter(CellIndex c) const;

  CellClass Classify(CellIndex c, const ClassThresholds& t = {}) const;
  std::vector<CellClass> Classes(const ClassThresholds& t = {}) const;

  const std::vector<double>& cells() const { return cells_; }

  // Cells modified since the last call.
  CellRect TakeDirty();

 private:
  std::size_t Offset(CellIndex c) const {
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.x);
  }

  int width_ = 0;
  int height_ = 0;
  double resolution_ = 1.0;
  Pose2D origin_;
  double min_ = -4.0;
  double max_ = 4.0;
  std::vector<double> cells_;
  CellRect dirty_;
};

// Cells crossed by the segment from `from` to `to` (grid coordinates), in
// order, including both end cells. Cells outside the grid are skipped.
std::vector<CellIndex> TraverseCells(const OccupancyGrid& grid, const Vec2& from,
                                     const Vec2& to);

// Known-pose inverse sensor model. Every finite beam frees the cells it
// crosses and marks its end cell; +inf beams free cells out to range_max.
// Within one scan a hit outranks a miss and each cell changes at most once.
void update_occupancy(OccupancyGrid& grid, const SE3& sensor_pose,
                      const Scan2D& scan, const LogOddsParams& params = {});

}  // namespace twinforge

#endif  // TWINFORGE_AUTONOMY_OCCUPANCY_GRID_HPP_
