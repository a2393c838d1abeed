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

#ifndef TWINFORGE_SIMCLI_RUNNER_HPP_
#define TWINFORGE_SIMCLI_RUNNER_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twinforge/bridge/mirror.hpp"
#include "twinforge/common/error.hpp"
#include "twinforge/simcli/command_log.hpp"
#include "twinforge/simcli/scenario.hpp"

namespace twinforge {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;      // missing files, invalid input
inline constexpr int kExitDiverged = 3;     // non-finite vehicle state
inline constexpr int kExitUnavailable = 4;  // bridge peer missing or lost

int ExitCodeFor(ErrorCode code);

// Column order of states.csv, one row per step after the step is applied.
std::string_view StateLogHeader();
std::string_view SensorLogHeader();

struct RunMetrics {
  std::int64_t steps = 0;
  double sim_time = 0.0;
  std::size_t tracking_samples = 0;
  double mean_cross_track = 0.0;
  double max_cross_track = 0.0;
  int laps = 0;
  bool terminated = false;
  double final_goal_distance = 0.0;  // to the last waypoint
  double final_speed = 0.0;
  std::size_t waypoints_recorded = 0;
  std::string state_log_sha256;
};

struct RunResult {
  int exit_code = kExitOk;
  std::string message;
  RunMetrics metrics;
  std::vector<std::filesystem::path> artifacts;
};

struct RunOptions {
  bridge::ExternalTarget* external = nullptr;
  std::optional<std::filesystem::path> output;  // overrides the scenario
};

// Fixed-step loop at scenario.dt. The command source is the tracker on the
// trajectory (stage track), else the command log, else the scripted route,
// else all-zero. Stage map writes map.pgm/map.yaml (and map.pcd for 3D
// lidars), stage record writes trajectory.csv; every run writes states.csv
// and summary.json. Nothing is written on failure.
RunResult run_scenario(const Scenario& scenario, const RunOptions& options = {});

// Applies `log` at its step indices (holding the last command in between) for
// the whole duration and writes states.csv only. Steps beyond the duration
// are an error.
RunResult replay(const CommandLog& log, const Scenario& scenario,
                 const RunOptions& options = {});

}  // namespace twinforge

#endif  // TWINFORGE_SIMCLI_RUNNER_HPP_
