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

#include "twinforge/simcli/serve.hpp"

#include <chrono>
#include <thread>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "twinforge/common/error.hpp"
#include "twinforge/simcli/artifacts.hpp"
#include "twinforge/simcli/grid_io.hpp"
#include "twinforge/simcli/trajectory_io.hpp"

namespace twinforge {

std::shared_ptr<const bridge::Snapshot> MakeSnapshot(
    Simulation& sim, const std::shared_ptr<const bridge::Snapshot>& previous) {
  auto s = std::make_shared<bridge::Snapshot>();
  s->sim_time = sim.time();
  s->pose = sim.pose();
  s->speed = sim.speed();
  s->gear = DisplayGear(sim.state(), sim.scenario().profile.vehicle.scale);
  if (sim.last_scan()) s->scan = bridge::DecimateScan(sim.last_scan()->ranges);
  OccupancyGrid& grid = sim.grid();
  s->grid_width = grid.width();
  s->grid_height = grid.height();
  s->dirty = grid.TakeDirty();
  if (previous && previous->classes && s->dirty.empty()) {
    s->classes = previous->classes;
  } else {
    s->classes = std::make_shared<const std::vector<CellClass>>(grid.Classes());
  }
  s->tracker = sim.modes().tracking() ? "tracking" : "idle";
  s->mode = std::string(ModeName(sim.modes().mode()));
  s->recording = sim.recording();
  s->waypoints = sim.recorded().waypoints.size();
  const Routing& r = sim.modes().routing();
  if (r.commands_to_bridge || r.state_from_bridge) {
    s->degraded = r.commands_to_bridge && sim.mirror().degraded();
    s->external_link = !s->degraded;
  }
  return s;
}

RunResult serve(const Scenario& scenario, const ServeOptions& options) {
  RunResult result;
  const std::filesystem::path out = options.output.value_or(scenario.output);
  const double duration = options.duration > 0.0 ? options.duration : scenario.duration;
  const std::int64_t total = std::llround(duration / scenario.dt);
  try {
    bridge::ServerConfig config = options.server;
    config.throttle_min = scenario.profile.vehicle.scale == Scale::kSmall ? -1.0 : 0.0;
    config.steering_limit = scenario.profile.vehicle.steering.limit;
    bridge::BridgeServer server(config);
    server.Start();
    if (options.on_listening) options.on_listening(server.port());

    Simulation sim(scenario, &server.vehicle_link());
    sim.set_mapping(scenario.stage == Stage::kMap);
    sim.set_recording(scenario.stage == Stage::kRecord);

    const auto stopping = [&] { return options.stop != nullptr && options.stop->load(); };
    if (sim.modes().routing().state_from_bridge) {
      const double deadline = server.Now() + options.peer_wait;
      while (!server.vehicle_link().Alive() && server.Now() < deadline && !stopping()) {
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
      }
    }

    std::shared_ptr<const bridge::Snapshot> snapshot;
    const auto start = std::chrono::steady_clock::now();
    std::int64_t k = 0;
    for (; k < total && !stopping(); ++k) {
      for (const bridge::ControlRequest& req : server.TakeRequests()) {
        if (req.record == bridge::RecordRequest::kStart) sim.set_recording(true);
        if (req.record == bridge::RecordRequest::kStop) sim.set_recording(false);
        if (req.mode) {
          try {
            sim.modes().SetMode(*req.mode);
          } catch (const Error& e) {
            server.SendError(req.connection, e.what());
          }
        }
      }
      sim.Step(server.TakeCommand());
      snapshot = MakeSnapshot(sim, snapshot);
      server.Publish(snapshot);
      if (options.realtime) {
        std::this_thread::sleep_until(
            start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(static_cast<double>(k + 1) * scenario.dt)));
      }
    }
    server.Stop();

    if (sim.mapping()) {
      save_grid(sim.grid(), out / "map.pgm");
      result.artifacts.push_back(out / "map.pgm");
      result.artifacts.push_back(out / "map.yaml");
    }
    if (!sim.recorded().waypoints.empty()) {
      save_trajectory(sim.recorded(), out / "trajectory.csv");
      result.artifacts.push_back(out / "trajectory.csv");
    }
    result.metrics.steps = k;
    result.metrics.sim_time = sim.time();
    result.metrics.final_speed = sim.speed();
    result.metrics.waypoints_recorded = sim.recorded().waypoints.size();
    AtomicFile file(out / "summary.json");
    file.stream() << nlohmann::json{{"stage", StageName(scenario.stage)},
                                    {"mode", ModeName(sim.modes().mode())},
                                    {"steps", k},
                                    {"sim_time", sim.time()},
                                    {"final_speed", sim.speed()},
                                    {"waypoints_recorded", sim.recorded().waypoints.size()}}
                         .dump(2)
                  << '\n';
    file.Commit();
    result.artifacts.push_back(out / "summary.json");
    result.message = "ok";
  } catch (const Error& e) {
    result.exit_code = ExitCodeFor(e.code());
    result.message = e.what();
    result.artifacts.clear();
    spdlog::error("{}", e.what());
  }
  return result;
}

}  // namespace twinforge
