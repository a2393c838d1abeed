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

#include "twinforge/autonomy/occupancy_grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "twinforge/common/error.hpp"

namespace twinforge {

Pose2D ToPose2D(const SE3& pose) {
  return {pose.translation().x(), pose.translation().y(), pose.yaw()};
}

void CellRect::Expand(CellIndex c) {
  if (empty()) {
    x0 = x1 = c.x;
    y0 = y1 = c.y;
    return;
  }
  x0 = std::min(x0, c.x);
  y0 = std::min(y0, c.y);
  x1 = std::max(x1, c.x);
  y1 = std::max(y1, c.y);
}

OccupancyGrid::OccupancyGrid(int width, int height, double resolution,
                             Pose2D origin, double min_log_odds,
                             double max_log_odds)
    : width_(width),
      height_(height),
      resolution_(resolution),
      origin_(origin),
      min_(min_log_odds),
      max_(max_log_odds) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "grid dimensions must be positive");
  }
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw Error(ErrorCode::kInvalidArgument, "grid resolution must be positive");
  }
  if (!(min_log_odds <= 0.0 && max_log_odds >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "log-odds bounds must bracket 0");
  }
  cells_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                0.0);
}

void OccupancyGrid::Set(CellIndex c, double log_odds) {
  cells_[Offset(c)] = std::clamp(log_odds, min_, max_);
  dirty_.Expand(c);
}

Vec2 OccupancyGrid::WorldToGrid(const Vec2& p) const {
  const double c = std::cos(origin_.yaw);
  const double s = std::sin(origin_.yaw);
  const double dx = p.x() - origin_.x;
  const double dy = p.y() - origin_.y;
  return {(c * dx + s * dy) / resolution_, (-s * dx + c * dy) / resolution_};
}

Vec2 OccupancyGrid::GridToWorld(const Vec2& g) const {
  const double c = std::cos(origin_.yaw);
  const double s = std::sin(origin_.yaw);
  const double gx = g.x() * resolution_;
  const double gy = g.y() * resolution_;
  return {origin_.x + c * gx - s * gy, origin_.y + s * gx + c * gy};
}

std::optional<CellIndex> OccupancyGrid::WorldToCell(const Vec2& p) const {
  const Vec2 g = WorldToGrid(p);
  const CellIndex c{static_cast<int>(std::floor(g.x())),
                    static_cast<int>(std::floor(g.y()))};
  if (!Contains(c)) return std::nullopt;
  return c;
}

Vec2 OccupancyGrid::CellCenter(CellIndex c) const {
  return GridToWorld(Vec2(c.x + 0.5, c.y + 0.5));
}

CellClass OccupancyGrid::Classify(CellIndex c, const ClassThresholds& t) const {
  const double v = at(c);
  if (v > t.occupied) return CellClass::kOccupied;
  if (v < t.free) return CellClass::kFree;
  return CellClass::kUnknown;
}

std::vector<CellClass> OccupancyGrid::Classes(const ClassThresholds& t) const {
  std::vector<CellClass> out(cells_.size());
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      out[Offset({x, y})] = Classify({x, y}, t);
    }
  }
  return out;
}

CellRect OccupancyGrid::TakeDirty() {
  const CellRect out = dirty_;
  dirty_ = CellRect{};
  return out;
}

std::vector<CellIndex> TraverseCells(const OccupancyGrid& grid, const Vec2& from,
                                     const Vec2& to) {
  std::vector<CellIndex> out;
  CellIndex cell{static_cast<int>(std::floor(from.x())),
                 static_cast<int>(std::floor(from.y()))};
  const CellIndex last{static_cast<int>(std::floor(to.x())),
                       static_cast<int>(std::floor(to.y()))};
  const Vec2 d = to - from;
  const int step_x = d.x() > 0 ? 1 : (d.x() < 0 ? -1 : 0);
  const int step_y = d.y() > 0 ? 1 : (d.y() < 0 ? -1 : 0);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const double delta_x = step_x != 0 ? std::abs(1.0 / d.x()) : kInf;
  const double delta_y = step_y != 0 ? std::abs(1.0 / d.y()) : kInf;
  double t_x = step_x > 0   ? (cell.x + 1 - from.x()) * delta_x
               : step_x < 0 ? (from.x() - cell.x) * delta_x
                            : kInf;
  double t_y = step_y > 0   ? (cell.y + 1 - from.y()) * delta_y
               : step_y < 0 ? (from.y() - cell.y) * delta_y
                            : kInf;

  const int max_steps = std::abs(last.x - cell.x) + std::abs(last.y - cell.y);
  for (int i = 0;; ++i) {
    if (grid.Contains(cell)) out.push_back(cell);
    if (cell == last || i >= max_steps) break;
    if (t_x < t_y) {
      cell.x += step_x;
      t_x += delta_x;
    } else {
      cell.y += step_y;
      t_y += delta_y;
    }
  }
  return out;
}

void update_occupancy(OccupancyGrid& grid, const SE3& sensor_pose,
                      const Scan2D& scan, const LogOddsParams& params) {
  const Vec2 origin = sensor_pose.translation().head<2>();
  const Vec2 start = grid.WorldToGrid(origin);
  const auto index = [&](CellIndex c) {
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(grid.width()) +
           static_cast<std::size_t>(c.x);
  };

  // 0 untouched, 1 free, 2 hit.
  std::vector<std::uint8_t> mark(grid.cells().size(), 0);
  std::vector<CellIndex> touched;
  for (std::size_t i = 0; i < scan.ranges.size(); ++i) {
    const double r = scan.ranges[i];
    if (std::isnan(r)) continue;
    const double theta = scan.angle_min + static_cast<double>(i) * scan.angle_increment;
    const Vec3 dir3 = sensor_pose.Rotate(Vec3(std::cos(theta), std::sin(theta), 0.0));
    const Vec2 dir = dir3.head<2>();
    if (dir.norm() < 1e-12) continue;
    const bool finite = std::isfinite(r);
    const double reach = finite ? r : scan.range_max;
    const Vec2 end = grid.WorldToGrid(origin + reach * dir.normalized());
    const auto cells = TraverseCells(grid, start, end);
    if (cells.empty()) continue;
    const bool end_inside = cells.back() == CellIndex{static_cast<int>(std::floor(end.x())),
                                                      static_cast<int>(std::floor(end.y()))};
    const std::size_t free_count = finite && end_inside ? cells.size() - 1 : cells.size();
    for (std::size_t k = 0; k < free_count; ++k) {
      auto& m = mark[index(cells[k])];
      if (m == 0) {
        m = 1;
        touched.push_back(cells[k]);
      }
    }
    if (finite && end_inside) {
      auto& m = mark[index(cells.back())];
      if (m == 0) touched.push_back(cells.back());
      m = 2;
    }
  }
  for (const CellIndex c : touched) {
    grid.Add(c, mark[index(c)] == 2 ? params.hit : -params.miss);
  }
}

}  // namespace twinforge
