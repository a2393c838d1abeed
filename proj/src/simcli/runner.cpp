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

#include "twinforge/simcli/runner.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "twinforge/common/error.hpp"
#include "twinforge/sensors/encoder.hpp"
#include "twinforge/simcli/artifacts.hpp"
#include "twinforge/simcli/grid_io.hpp"
#include "twinforge/simcli/pcd_io.hpp"
#include "twinforge/simcli/simulation.hpp"
#include "twinforge/simcli/trajectory_io.hpp"

namespace twinforge {
namespace {

constexpr double kRestSpeed = 0.05;  // m/s
constexpr double kRestHold = 0.5;    // s at rest after termination ends a run

void AppendRow(std::ostream& out, std::int64_t step, const Simulation& sim,
               const DriveCommand& cmd, std::optional<std::size_t> target,
               double cross_track, std::string_view status) {
  const VehicleState& s = sim.state();
  const Pose2D p = sim.pose();
  const Vec3 v = s.body.pose.rotation().transpose() * s.body.linear_velocity;
  out << step << ',' << FormatDouble(sim.time()) << ',' << FormatDouble(p.x) << ','
      << FormatDouble(p.y) << ',' << FormatDouble(p.yaw) << ',' << FormatDouble(v.x())
      << ',' << FormatDouble(v.y()) << ',' << FormatDouble(s.body.angular_velocity.z())
      << ',' << FormatDouble(s.steering) << ','
      << DisplayGear(s, sim.scenario().profile.vehicle.scale) << ','
      << FormatDouble(s.powertrain.rpm) << ',' << FormatDouble(cmd.throttle) << ','
      << FormatDouble(cmd.steering) << ',' << FormatDouble(cmd.brake) << ','
      << (cmd.handbrake ? 1 : 0) << ','
      << (target ? static_cast<long long>(*target) : -1LL) << ','
      << FormatDouble(cross_track) << ',' << status << '\n';
}

void AppendSensorRow(std::ostream& out, std::int64_t step, const Simulation& sim) {
  out << step << ',' << FormatDouble(sim.time());
  if (const auto& ins = sim.last_ins()) {
    const auto put = [&](double v) { out << ',' << FormatDouble(v); };
    for (int i = 0; i < 3; ++i) put(ins->position[i]);
    for (int i = 0; i < 3; ++i) put(ins->imu.linear_acceleration[i]);
    for (int i = 0; i < 3; ++i) put(ins->imu.angular_velocity[i]);
    for (int i = 0; i < 3; ++i) put(ins->imu.euler[i]);
    for (const double q : ins->imu.quaternion) put(q);
  } else {
    for (int i = 0; i < 16; ++i) out << ",nan";
  }
  for (const WheelState& w : sim.state().wheels) {
    out << ',';
    if (sim.scenario().sensors.encoders) out << encoder_read(w.revolutions, EncoderParams{});
  }
  out << '\n';
}

void WriteMirrorLog(const std::vector<bridge::DeliveryRecord>& records,
                    const std::filesystem::path& path) {
  AtomicFile file(path);
  for (const auto& r : records) {
    nlohmann::json j = {{"step", r.step}, {"sim_stamp", r.sim_stamp}, {"payload", r.payload}};
    j["external_stamp"] = r.external_stamp ? nlohmann::json(*r.external_stamp) : nlohmann::json(nullptr);
    file.stream() << j.dump() << '\n';
  }
  file.Commit();
}

Trajectory LoadTrackInput(const Scenario& s) {
  Trajectory t;
  try {
    t = load_trajectory(*s.trajectory);
  } catch (const Error& e) {
    if (std::string_view(e.what()) == "no waypoints") {
      throw Error(ErrorCode::kFailedPrecondition, "empty trajectory");
    }
    throw;
  }
  if (s.loop) t.loop = *s.loop;
  return t;
}

RunResult Execute(const Scenario& s, const RunOptions& options, const CommandLog* log,
                  bool replay_only) {
  RunResult result;
  const std::filesystem::path out = options.output.value_or(s.output);
  const std::int64_t total = std::llround(s.duration / s.dt);
  try {
    std::optional<Trajectory> input;
    if (!replay_only && s.stage == Stage::kTrack) input = LoadTrackInput(s);

    CommandLog file_log;
    if (log == nullptr && !input && s.commands) {
      file_log = load_command_log(*s.commands);
      log = &file_log;
    }
    if (log != nullptr && !log->empty() && log->rows().back().step >= total) {
      throw Error(ErrorCode::kInvalidArgument,
                  "command log step " + std::to_string(log->rows().back().step) +
                      " is beyond the last step " + std::to_string(total - 1));
    }

    std::optional<PathTracker> tracker;
    if (input) {
      tracker.emplace(*input, s.tracker);
    } else if (log == nullptr && s.route.shape != RouteSpec::Shape::kNone) {
      const double speed = s.route.speed > 0.0 ? s.route.speed : s.profile.cruise_speed;
      tracker.emplace(BuildRoute(s.route, speed), s.tracker);
    }

    Scenario run = s;
    if (!run.start && tracker) {
      const Waypoint& w = tracker->trajectory().waypoints.front();
      run.start = Pose2D{w.x, w.y, w.yaw};
    }
    Simulation sim(run, options.external);
    sim.set_mapping(!replay_only && s.stage == Stage::kMap);
    sim.set_recording(!replay_only && s.stage == Stage::kRecord);
    if (input) sim.modes().SetTracking(true);

    AtomicFile states(out / "states.csv");
    states.stream() << StateLogHeader() << '\n';
    std::optional<AtomicFile> sensors;
    if (s.sensors.ins || s.sensors.encoders) {
      sensors.emplace(out / "sensors.csv");
      sensors->stream() << SensorLogHeader() << '\n';
    }

    RunMetrics& m = result.metrics;
    double cte_sum = 0.0;
    int rest_steps = 0;
    const int rest_needed = static_cast<int>(std::ceil(kRestHold / s.dt));
    for (std::int64_t k = 0; k < total; ++k) {
      DriveCommand cmd;
      std::optional<std::size_t> target;
      std::string_view status = "idle";
      if (log != nullptr) {
        cmd = log->At(k);
      } else if (tracker) {
        const TrackerOutput to = tracker->Step(sim.pose(), sim.speed(), s.dt);
        cmd = to.command;
        target = to.target;
        status = StatusName(to.status);
      }
      sim.Step(cmd);
      m.steps = k + 1;

      double cte = std::numeric_limits<double>::quiet_NaN();
      if (tracker) {
        cte = CrossTrackError(sim.pose(), tracker->trajectory());
        if (input && tracker->state().status == TrackerStatus::kTracking) {
          ++m.tracking_samples;
          cte_sum += cte;
          m.max_cross_track = std::max(m.max_cross_track, cte);
        }
      }
      AppendRow(states.stream(), k, sim, cmd, target, cte, status);
      if (sensors) AppendSensorRow(sensors->stream(), k, sim);

      if (tracker) {
        const TrackerState& ts = tracker->state();
        if (ts.status == TrackerStatus::kTerminated && std::abs(sim.speed()) < kRestSpeed) {
          ++rest_steps;
        } else {
          rest_steps = 0;
        }
        if (s.stop_when_at_rest && rest_steps >= rest_needed) break;
        if (input && input->loop && s.stop_after_laps > 0 && ts.laps >= s.stop_after_laps) break;
      }
    }

    m.sim_time = sim.time();
    m.final_speed = sim.speed();
    m.mean_cross_track = m.tracking_samples > 0 ? cte_sum / static_cast<double>(m.tracking_samples) : 0.0;
    if (tracker) {
      const TrackerState& ts = tracker->state();
      m.laps = ts.laps;
      m.terminated = ts.status == TrackerStatus::kTerminated;
      const Waypoint& last = tracker->trajectory().waypoints.back();
      const Pose2D p = sim.pose();
      m.final_goal_distance = std::hypot(p.x - last.x, p.y - last.y);
    }
    m.waypoints_recorded = sim.recorded().waypoints.size();

    if (!replay_only && s.stage == Stage::kMap) {
      save_grid(sim.grid(), out / "map.pgm");
      result.artifacts.push_back(out / "map.pgm");
      result.artifacts.push_back(out / "map.yaml");
      if (s.profile.lidar.three_d && s.sensors.lidar) {
        save_cloud(sim.map_cloud(), out / "map.pcd");
        result.artifacts.push_back(out / "map.pcd");
      }
    }
    if (!replay_only && s.stage == Stage::kRecord) {
      save_trajectory(sim.recorded(), out / "trajectory.csv");
      result.artifacts.push_back(out / "trajectory.csv");
    }
    if (sim.modes().routing().commands_to_bridge) {
      WriteMirrorLog(sim.mirror().sim_log(), out / "mirror_sim.jsonl");
      WriteMirrorLog(sim.mirror().bridge_log(), out / "mirror_bridge.jsonl");
      result.artifacts.push_back(out / "mirror_sim.jsonl");
      result.artifacts.push_back(out / "mirror_bridge.jsonl");
    }
    if (sensors) {
      sensors->Commit();
      result.artifacts.push_back(out / "sensors.csv");
    }
    states.Commit();
    result.artifacts.push_back(out / "states.csv");
    m.state_log_sha256 = Sha256File(out / "states.csv");

    if (!replay_only) {
      nlohmann::json summary = {{"stage", StageName(s.stage)},
                                {"mode", ModeName(s.mode)},
                                {"steps", m.steps},
                                {"sim_time", m.sim_time},
                                {"tracking_samples", m.tracking_samples},
                                {"mean_cross_track", m.mean_cross_track},
                                {"max_cross_track", m.max_cross_track},
                                {"laps", m.laps},
                                {"terminated", m.terminated},
                                {"final_goal_distance", m.final_goal_distance},
                                {"final_speed", m.final_speed},
                                {"waypoints_recorded", m.waypoints_recorded},
                                {"state_log_sha256", m.state_log_sha256}};
      AtomicFile file(out / "summary.json");
      file.stream() << summary.dump(2) << '\n';
      file.Commit();
      result.artifacts.push_back(out / "summary.json");
    }
    result.message = "ok";
  } catch (const Error& e) {
    result.exit_code = ExitCodeFor(e.code());
    result.message = e.what();
    result.artifacts.clear();
    spdlog::error("{}", e.what());
  }
  return result;
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDiverged:
      return kExitDiverged;
    case ErrorCode::kUnavailable:
      return kExitUnavailable;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kNotFound:
    case ErrorCode::kBadFormat:
    case ErrorCode::kFailedPrecondition:
      break;
  }
  return kExitInvalid;
}

std::string_view StateLogHeader() {
  return "step,time,x,y,yaw,speed,lateral_speed,yaw_rate,steering,gear,rpm,"
         "throttle_cmd,steering_cmd,brake_cmd,handbrake_cmd,target,cross_track,status";
}

std::string_view SensorLogHeader() {
  return "step,time,ips_x,ips_y,ips_z,accel_x,accel_y,accel_z,gyro_x,gyro_y,gyro_z,"
         "roll,pitch,yaw,q0,q1,q2,q3,encoder_fl,encoder_fr,encoder_rl,encoder_rr";
}

RunResult run_scenario(const Scenario& scenario, const RunOptions& options) {
  return Execute(scenario, options, nullptr, false);
}

RunResult replay(const CommandLog& log, const Scenario& scenario, const RunOptions& options) {
  return Execute(scenario, options, &log, true);
}

}  // namespace twinforge
