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

#ifndef TWINFORGE_SIMCLI_SCENARIO_HPP_
#define TWINFORGE_SIMCLI_SCENARIO_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twinforge/autonomy/modes.hpp"
#include "twinforge/autonomy/tracker.hpp"
#include "twinforge/sensors/ins.hpp"
#include "twinforge/simcli/profile.hpp"

namespace twinforge {

enum class Stage { kMap, kRecord, kTrack };

std::string_view StageName(Stage stage);
std::optional<Stage> ParseStage(std::string_view text);

// Scripted drive: a geometric route followed with the tracker.
struct RouteSpec {
  enum class Shape { kNone, kSquare, kCircle, kFigureEight, kPoints };
  Shape shape = Shape::kNone;
  Vec2 center = Vec2::Zero();
  double size = 1.0;   // square side, circle radius, figure-eight half-width
  double heading = 0.0;  // rad, rotation of the shape about its centre
  double speed = 0.0;  // m/s; 0 selects the profile cruise speed
  int laps = 1;
  std::vector<Vec2> points;  // kPoints
  double step = 0.1;         // m between generated route points
};

// Dense waypoints for the route, closing on the start point after each lap.
Trajectory BuildRoute(const RouteSpec& route, double speed);

struct GridSpec {
  double resolution = 0.1;
  // Unset: world bounds plus `margin` on each side.
  std::optional<Pose2D> origin;
  int width = 0;
  int height = 0;
  double margin = 0.5;
};

struct SensorSuite {
  bool lidar = true;
  bool ins = false;       // writes sensors.csv
  bool encoders = false;  // adds encoder ticks to sensors.csv
  InsConfig ins_config;
  double z_lo = -0.1;  // 3D to 2D reduction band, sensor frame, m
  double z_hi = 0.1;
  unsigned lidar_threads = 1;
};

// Paths are absolute after loading (resolved against the scenario file).
struct Scenario {
  std::filesystem::path world;
  std::string vehicle;
  VehicleProfile profile;
  SensorSuite sensors;
  OperationalMode mode = OperationalMode::kHighFidelitySim;
  double dt = 0.01;
  double duration = 60.0;
  std::uint64_t seed = 1;
  Stage stage = Stage::kMap;
  std::filesystem::path output = "out";

  std::optional<Pose2D> start;
  RouteSpec route;
  std::optional<std::filesystem::path> commands;    // replayed command log
  std::optional<std::filesystem::path> trajectory;  // track input
  std::optional<bool> loop;                         // overrides the file flag
  double spacing = 0.0;                              // d_wp; 0 = profile
  TrackerConfig tracker;
  int stop_after_laps = 0;       // looping track: end after this many wraps
  bool stop_when_at_rest = true;  // end once terminated and stopped
  GridSpec grid;
};

// Throws Error: kNotFound for missing referenced files, kBadFormat for
// malformed content. `profile_dirs` are searched after the scenario's own
// profiles/ and ../profiles/ directories.
Scenario ParseScenario(std::string_view json_text,
                       const std::filesystem::path& base_dir,
                       const std::vector<std::filesystem::path>& profile_dirs = {});
Scenario LoadScenario(const std::filesystem::path& path,
                      const std::vector<std::filesystem::path>& profile_dirs = {});

}  // namespace twinforge

#endif  // TWINFORGE_SIMCLI_SCENARIO_HPP_
