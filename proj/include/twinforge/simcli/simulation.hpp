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

#ifndef TWINFORGE_SIMCLI_SIMULATION_HPP_
#define TWINFORGE_SIMCLI_SIMULATION_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>

#include "twinforge/autonomy/modes.hpp"
#include "twinforge/autonomy/occupancy_grid.hpp"
#include "twinforge/autonomy/trajectory.hpp"
#include "twinforge/bridge/mirror.hpp"
#include "twinforge/sensors/ins.hpp"
#include "twinforge/sensors/noise.hpp"
#include "twinforge/simcli/scenario.hpp"
#include "twinforge/vehicle/vehicle_model.hpp"
#include "twinforge/worldcore/world.hpp"

namespace twinforge {

// "P", "R", "N" or the gear number; small-scale vehicles report D/R/N from
// the applied throttle.
std::string DisplayGear(const VehicleState& state, Scale scale);

// Grid covering the world bounds plus margin unless origin and size are given.
OccupancyGrid MakeGrid(const GridSpec& spec, const World& world);

// One vehicle in one world, advanced a fixed step at a time. Sensing happens
// at the start of a step from the pre-step pose; mapping and recording
// consume it when enabled.
class Simulation {
 public:
  explicit Simulation(const Scenario& scenario,
                      bridge::ExternalTarget* external = nullptr);

  // Throws Error kUnavailable when the routing needs a bridge peer that is
  // not there, kDiverged on non-finite vehicle state.
  void Step(const DriveCommand& command);

  const Scenario& scenario() const { return scenario_; }
  const VehicleModel& model() const { return model_; }
  const World& world() const { return world_; }
  const VehicleState& state() const { return state_; }
  std::int64_t step_index() const { return step_; }
  double time() const { return static_cast<double>(step_) * scenario_.dt; }
  Pose2D pose() const { return ToPose2D(state_.body.pose); }
  double speed() const { return state_.speed(); }

  ModeController& modes() { return modes_; }
  const ModeController& modes() const { return modes_; }
  const bridge::CommandMirror& mirror() const { return mirror_; }

  bool mapping() const { return mapping_; }
  void set_mapping(bool on) { mapping_ = on; }
  bool recording() const { return recording_; }
  void set_recording(bool on) { recording_ = on; }

  const OccupancyGrid& grid() const { return grid_; }
  OccupancyGrid& grid() { return grid_; }
  const Trajectory& recorded() const { return recorded_; }
  const std::optional<Scan2D>& last_scan() const { return last_scan_; }
  const PointCloud& map_cloud() const { return map_cloud_; }
  const std::optional<InsReading>& last_ins() const { return last_ins_; }

 private:
  void Sense();
  void AccumulateCloud(const PointCloud& cloud, const SE3& sensor);

  Scenario scenario_;
  World world_;
  VehicleModel model_;
  VehicleState state_;
  std::int64_t step_ = 0;
  int lidar_period_ = 1;
  bridge::ExternalTarget* external_;
  ModeController modes_;
  bridge::CommandMirror mirror_;
  GaussianNoise noise_;

  bool mapping_ = false;
  bool recording_ = false;
  OccupancyGrid grid_;
  Trajectory recorded_;
  std::optional<Scan2D> last_scan_;
  PointCloud map_cloud_;
  std::unordered_set<std::uint64_t> voxels_;
  std::optional<InsReading> last_ins_;
};

}  // namespace twinforge

#endif  // TWINFORGE_SIMCLI_SIMULATION_HPP_
