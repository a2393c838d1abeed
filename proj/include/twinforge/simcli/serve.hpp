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

#ifndef TWINFORGE_SIMCLI_SERVE_HPP_
#define TWINFORGE_SIMCLI_SERVE_HPP_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>

#include "twinforge/bridge/server.hpp"
#include "twinforge/simcli/runner.hpp"
#include "twinforge/simcli/scenario.hpp"
#include "twinforge/simcli/simulation.hpp"

namespace twinforge {

struct ServeOptions {
  bridge::ServerConfig server;  // throttle_min and steering_limit come from the profile
  std::optional<std::filesystem::path> output;
  double duration = 0.0;       // s of sim time; 0 uses the scenario's
  bool realtime = true;        // pace steps against the wall clock
  double peer_wait = 5.0;      // s to wait for a testbed peer before giving up
  const std::atomic<bool>* stop = nullptr;
  std::function<void(std::uint16_t port)> on_listening;
};

// Snapshot of the simulation for streaming. `previous` lets the class grid
// be shared while the map is unchanged.
std::shared_ptr<const bridge::Snapshot> MakeSnapshot(
    Simulation& sim, const std::shared_ptr<const bridge::Snapshot>& previous);

// Runs the scenario driven by the bridge's teleop commands. Record and mode
// requests from the authority holder apply between steps. Writes the map
// when mapping, the trajectory when anything was recorded, and summary.json.
RunResult serve(const Scenario& scenario, const ServeOptions& options);

}  // namespace twinforge

#endif  // TWINFORGE_SIMCLI_SERVE_HPP_
