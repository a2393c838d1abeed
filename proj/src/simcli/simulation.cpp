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

#include "twinforge/simcli/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "twinforge/autonomy/scan_reduction.hpp"
#include "twinforge/common/error.hpp"

namespace twinforge {
namespace {

constexpr double kVoxel = 0.05;  // m, map cloud deduplication

std::uint64_t VoxelKey(const Vec3& p) {
  const auto q = [](double v) {
    return static_cast<std::uint64_t>(static_cast<std::int64_t>(std::floor(v / kVoxel)) + (1 << 20)) &
           0x1FFFFF;
  };
  return (q(p.x()) << 42) | (q(p.y()) << 21) | q(p.z());
}

}  // namespace

std::string DisplayGear(const VehicleState& state, Scale scale) {
  if (scale == Scale::kFull) return GearLabel(state.powertrain.gear);
  if (state.throttle > 0.0) return "D";
  if (state.throttle < 0.0) return "R";
  return "N";
}

OccupancyGrid MakeGrid(const GridSpec& spec, const World& world) {
  const Bounds& b = world.bounds();
  const Pose2D origin =
      spec.origin.value_or(Pose2D{b.xmin - spec.margin, b.ymin - spec.margin, 0.0});
  const auto cells = [&](int given, double span) {
    return given > 0 ? given
                     : std::max(1, static_cast<int>(std::ceil((span + 2.0 * spec.margin) /
                                                              spec.resolution)));
  };
  return OccupancyGrid(cells(spec.width, b.xmax - b.xmin), cells(spec.height, b.ymax - b.ymin),
                       spec.resolution, origin);
}

Simulation::Simulation(const Scenario& scenario, bridge::ExternalTarget* external)
    : scenario_(scenario),
      world_(LoadWorld(scenario.world)),
      model_(scenario.profile.vehicle),
      external_(external),
      modes_(scenario.mode),
      mirror_(external, scenario.profile.vehicle.steering.limit),
      noise_(scenario.seed),
      grid_(MakeGrid(scenario.grid, world_)) {
  const Pose2D start = scenario.start.value_or(Pose2D{});
  state_ = model_.InitialState(start.x, start.y, start.yaw);
  recorded_.spacing = scenario.spacing;
  recorded_.loop = scenario.loop.value_or(false);
  const double rate = scenario.profile.lidar.params.planar.update_rate;
  lidar_period_ = rate > 0.0 ? std::max(1, static_cast<int>(std::lround(1.0 / (rate * scenario.dt))))
                             : 1;
}

void Simulation::AccumulateCloud(const PointCloud& cloud, const SE3& sensor) {
  for (const Vec3& p : cloud.points) {
    const Vec3 w = sensor * p;
    if (voxels_.insert(VoxelKey(w)).second) map_cloud_.points.push_back(w);
  }
}

void Simulation::Sense() {
  if (!scenario_.sensors.lidar || step_ % lidar_period_ != 0) return;
  const LidarConfig& lidar = scenario_.profile.lidar;
  const SE3& pose = state_.body.pose;
  const double stamp = time();
  if (lidar.three_d) {
    const PointCloud cloud =
        lidar3d_scan(world_, pose, lidar.params, stamp, scenario_.sensors.lidar_threads);
    const SE3 sensor = pose * lidar.params.planar.mount;
    last_scan_ = pcd_to_scan(cloud, scenario_.sensors.z_lo, scenario_.sensors.z_hi,
                             lidar.params.planar, sensor);
    last_scan_->stamp = stamp;
    if (mapping_) AccumulateCloud(cloud, sensor);
  } else {
    last_scan_ = lidar2d_scan(world_, pose, lidar.params.planar, stamp);
  }
  if (mapping_) update_occupancy(grid_, last_scan_->pose, *last_scan_);
}

void Simulation::Step(const DriveCommand& command) {
  const Routing& routing = modes_.routing();
  if (routing.state_from_bridge && (external_ == nullptr || !external_->Alive())) {
    throw Error(ErrorCode::kUnavailable, "bridge heartbeat lost: no testbed peer");
  }
  Sense();

  if (routing.commands_to_bridge) mirror_.Mirror(step_, time(), command);

  const Vec3 previous_velocity = state_.body.linear_velocity;
  switch (routing.plant) {
    case Plant::kDynamic:
      state_ = model_.Step(state_, command, world_, scenario_.dt);
      break;
    case Plant::kKinematic:
      state_ = model_.KinematicStep(state_, command, scenario_.dt);
      break;
    case Plant::kNone: {
      const auto ext = external_->LatestState();
      if (!ext) throw Error(ErrorCode::kUnavailable, "bridge heartbeat lost: no testbed state");
      state_.body.pose = SE3::FromYaw(ext->pose.yaw, Vec3(ext->pose.x, ext->pose.y, 0.0));
      state_.body.linear_velocity = state_.body.pose.Rotate(Vec3(ext->speed, 0.0, 0.0));
      state_.throttle = command.throttle;
      state_.brake = command.brake;
      state_.handbrake = command.handbrake;
      state_.time += scenario_.dt;
      break;
    }
  }
  ++step_;

  if (scenario_.sensors.ins) {
    last_ins_ = ins_read(state_.body, previous_velocity, scenario_.dt,
                         scenario_.sensors.ins_config, noise_);
  }
  if (recording_) record_waypoint(recorded_, pose(), speed());
}

}  // namespace twinforge
