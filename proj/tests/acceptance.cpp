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

// Acceptance runner: one PASS/FAIL line per criterion, exit 1 on any FAIL.
// Optional arguments select criteria by number.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "oracles.hpp"
#include "test_util.hpp"
#include "twinforge/autonomy/scan_reduction.hpp"
#include "twinforge/sensors/camera.hpp"
#include "twinforge/sensors/lidar.hpp"
#include "twinforge/simcli/artifacts.hpp"
#include "twinforge/simcli/command_log.hpp"
#include "twinforge/simcli/grid_io.hpp"
#include "twinforge/simcli/profile.hpp"
#include "twinforge/simcli/runner.hpp"
#include "twinforge/simcli/scenario.hpp"
#include "twinforge/simcli/trajectory_io.hpp"
#include "twinforge/vehicle/powertrain.hpp"
#include "twinforge/vehicle/steering.hpp"
#include "twinforge/vehicle/tire.hpp"

namespace twinforge {
namespace {

namespace fs = std::filesystem;
using testing::Rng;
using testing::Uniform;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Format(const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

class Workspace {
 public:
  Workspace()
      : source_(TWINFORGE_SOURCE_DIR),
        root_(fs::temp_directory_path() /
              ("twinforge_acceptance_" + std::to_string(::getpid()))) {
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  ~Workspace() {
    std::error_code ec;
    fs::remove_all(root_, ec);
  }
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  Scenario Load(const std::string& name) const {
    return LoadScenario(source_ / "scenarios" / name, {source_ / "profiles"});
  }
  fs::path Out(const std::string& name) const { return root_ / name; }

  // Figure-eight recorded once and shared by the tracking criteria.
  const fs::path& Fig8Trajectory() {
    if (!fig8_) {
      RunOptions o;
      o.output = Out("fig8_record");
      const RunResult r = run_scenario(Load("fig8_record.json"), o);
      if (r.exit_code != kExitOk) throw std::runtime_error("record failed: " + r.message);
      fig8_ = Out("fig8_record") / "trajectory.csv";
    }
    return *fig8_;
  }

 private:
  fs::path source_;
  fs::path root_;
  std::optional<fs::path> fig8_;
};

std::vector<std::vector<std::string>> ReadCsv(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(cell);
    rows.push_back(std::move(row));
  }
  return rows;
}

Lidar2DParams FullCircle(double res_deg, double height) {
  Lidar2DParams p;
  p.range_min = 0.1;
  p.range_max = 30.0;
  p.angle_increment = res_deg * std::numbers::pi / 180.0;
  p.angle_min = -std::numbers::pi;
  p.angle_max = std::numbers::pi - p.angle_increment;
  p.mount = SE3::FromTranslation(Vec3(0, 0, height));
  return p;
}

// ---- criteria ----

Outcome AckermannIdentity(Workspace&) {
  auto rng = Rng(101);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    const double delta = sign * Uniform(rng, 1e-3, 0.5);
    const double l = Uniform(rng, 0.1, 4.0);
    const double w = l * Uniform(rng, 0.2, 1.5);
    const AckermannAngles a = ackermann_angles(delta, l, w);
    const double err = std::abs(1.0 / std::tan(a.left) - 1.0 / std::tan(a.right) - w / l);
    worst = std::max(worst, err);
  }
  return {worst < 1e-9, Format("max |cot(dl) - cot(dr) - w/l| = %.2e over 1000 samples", worst)};
}

Outcome TireSplineKnots(Workspace&) {
  auto rng = Rng(102);
  double value_gap = 0.0;
  double slope = 0.0;
  for (int n = 0; n < 100; ++n) {
    const TireKnots k = testing::RandomKnots(rng);
    const TireSpline spline(k);
    const Cubic& f0 = spline.segments()[0];
    const Cubic& f1 = spline.segments()[1];
    value_gap = std::max(value_gap, std::abs(f0(k.extremum_slip) - f1(k.extremum_slip)));
    slope = std::max({slope, std::abs(f0.derivative(k.extremum_slip)),
                      std::abs(f1.derivative(k.extremum_slip)),
                      std::abs(f1.derivative(k.asymptote_slip))});
  }
  return {value_gap < 1e-12 && slope < 1e-9,
          Format("value gap %.2e, knot slope %.2e over 100 knot sets", value_gap, slope)};
}

Outcome LidarOracle(Workspace&) {
  const World room = MakeRectangularRoom(-5, -5, 5, 5, 1.0);
  const auto segs = testing::RoomSegments(5.0);
  const Lidar2DParams p = FullCircle(0.25, 0.2);
  auto rng = Rng(103);
  double worst = 0.0;
  std::size_t rays = 0;
  std::size_t mismatched_misses = 0;
  for (int n = 0; n < 50; ++n) {
    const SE3 pose = SE3::FromYaw(Uniform(rng, -3.1, 3.1),
                                  Vec3(Uniform(rng, -4.8, 4.8), Uniform(rng, -4.8, 4.8), 0.0));
    const Scan2D scan = lidar2d_scan(room, pose, p);
    const SE3 sensor = pose * p.mount;
    for (std::size_t i = 0; i < scan.ranges.size(); ++i) {
      const double th = sensor.yaw() + p.angle(i);
      double best = kInf;
      for (const auto& s : segs) {
        best = std::min(best, testing::RaySegment(sensor.translation().x(),
                                                  sensor.translation().y(), std::cos(th),
                                                  std::sin(th), s));
      }
      if (best < p.range_min || best > p.range_max) best = kInf;
      ++rays;
      if (std::isinf(best) || std::isinf(scan.ranges[i])) {
        if (std::isinf(best) != std::isinf(scan.ranges[i])) ++mismatched_misses;
        continue;
      }
      worst = std::max(worst, std::abs(scan.ranges[i] - best));
    }
  }
  return {worst < 1e-6 && mismatched_misses == 0,
          Format("max range error %.2e m over %zu rays, %zu hit/miss mismatches", worst, rays,
                 mismatched_misses)};
}

Outcome SurrogateEquivalence(Workspace&) {
  Lidar3DParams p3;
  p3.planar = FullCircle(1.0, 0.5);
  // Odd channel count centred on phi = 0.
  p3.channel_min = -16.0 * std::numbers::pi / 180.0;
  p3.channel_max = 16.0 * std::numbers::pi / 180.0;
  p3.channel_increment = 2.0 * std::numbers::pi / 180.0;
  auto rng = Rng(104);
  double worst = 0.0;
  std::size_t mismatched_misses = 0;
  for (int n = 0; n < 20; ++n) {
    const World world = testing::ExtrudedWorld(rng);
    const SE3 pose = SE3::FromYaw(Uniform(rng, -3, 3),
                                  Vec3(Uniform(rng, -4, 4), Uniform(rng, -4, 4), 0));
    const Scan2D direct = lidar2d_scan(world, pose, p3.planar);
    const Scan2D reduced = pcd_to_scan(lidar3d_scan(world, pose, p3), -0.05, 0.05, p3.planar);
    for (std::size_t i = 0; i < direct.ranges.size(); ++i) {
      const bool a = std::isinf(direct.ranges[i]);
      const bool b = std::isinf(reduced.ranges[i]);
      if (a || b) {
        mismatched_misses += a != b ? 1 : 0;
        continue;
      }
      worst = std::max(worst, std::abs(direct.ranges[i] - reduced.ranges[i]));
    }
  }
  return {worst < 1e-9 && mismatched_misses == 0,
          Format("max |reduced - planar| %.2e m over 20 poses, %zu hit/miss mismatches", worst,
                 mismatched_misses)};
}

Outcome CameraProjection(Workspace&) {
  CameraParams c;
  c.focal = 1.2;
  c.sensor_width = 36.0;
  c.sensor_height = 24.0;
  c.width_px = 1920;
  c.height_px = 1080;
  c.near = 0.3;
  c.far = 80.0;
  auto rng = Rng(105);
  double worst = 0.0;
  int disagreements = 0;
  int inside = 0;
  for (int n = 0; n < 1000; ++n) {
    const double roll = Uniform(rng, -0.5, 0.5);
    const double pitch = Uniform(rng, -0.5, 0.5);
    const double yaw = Uniform(rng, -3.0, 3.0);
    const std::array<double, 3> t{Uniform(rng, -5, 5), Uniform(rng, -5, 5), Uniform(rng, 0, 3)};
    const SE3 pose = SE3::FromRollPitchYaw(roll, pitch, yaw, Vec3(t[0], t[1], t[2]));
    const double depth = Uniform(rng, 0.2, 90.0);
    const Vec3 local(Uniform(rng, -1.1, 1.1) * depth / c.focal,
                     Uniform(rng, -1.1, 1.1) * depth * c.aspect() / c.focal, -depth);
    const Vec3 w = pose * local;
    const auto oracle = testing::OracleProject({w.x(), w.y(), w.z()}, roll, pitch, yaw, t, c);
    const auto px = camera_project(w, pose, c);
    if (px.has_value() != oracle.has_value()) {
      ++disagreements;
      continue;
    }
    if (!px) continue;
    ++inside;
    worst = std::max({worst, std::abs(px->u - (*oracle)[0]), std::abs(px->v - (*oracle)[1])});
  }
  const auto centre = camera_project(Vec3(0, 0, -5), SE3{}, c);
  const bool centred =
      centre && centre->u == c.width_px / 2.0 && centre->v == c.height_px / 2.0;
  return {worst < 1e-6 && disagreements == 0 && centred,
          Format("max pixel error %.2e over %d in-view points, %d visibility mismatches, "
                 "on-axis centre %s",
                 worst, inside, disagreements, centred ? "exact" : "off")};
}

Outcome ReplayDeterminism(Workspace& ws) {
  const Scenario s = ws.Load("replay_drive60.json");
  const CommandLog log = load_command_log(*s.commands);
  RunOptions a;
  a.output = ws.Out("replay_a");
  RunOptions b;
  b.output = ws.Out("replay_b");
  const RunResult ra = replay(log, s, a);
  const RunResult rb = replay(log, s, b);
  if (ra.exit_code != kExitOk || rb.exit_code != kExitOk) {
    return {false, "replay failed: " + ra.message + rb.message};
  }
  const std::string ha = Sha256File(ws.Out("replay_a") / "states.csv");
  const std::string hb = Sha256File(ws.Out("replay_b") / "states.csv");
  const bool sensors_equal = Sha256File(ws.Out("replay_a") / "sensors.csv") ==
                             Sha256File(ws.Out("replay_b") / "sensors.csv");
  return {ha == hb && sensors_equal && ra.metrics.steps == 6000,
          Format("%lld steps, states sha256 %s %s %s, sensors %s",
                 static_cast<long long>(ra.metrics.steps), ha.substr(0, 12).c_str(),
                 ha == hb ? "==" : "!=", hb.substr(0, 12).c_str(),
                 sensors_equal ? "identical" : "differ")};
}

Outcome Mapping(Workspace& ws) {
  RunOptions o;
  o.output = ws.Out("room10_map");
  const RunResult r = run_scenario(ws.Load("room10_map.json"), o);
  if (r.exit_code != kExitOk) return {false, "map run failed: " + r.message};
  const OccupancyGrid grid = load_grid(ws.Out("room10_map") / "map.pgm");
  const double iou = testing::OccupiedIoU(grid, testing::RasterizeRoom(grid, 5.0));
  return {iou >= 0.9, Format("occupied-cell IoU %.4f against rasterized walls", iou)};
}

Outcome EndToEnd(Workspace& ws) {
  Scenario s = ws.Load("fig8_track.json");
  s.trajectory = ws.Fig8Trajectory();
  RunOptions o;
  o.output = ws.Out("fig8_track");
  const RunResult r = run_scenario(s, o);
  if (r.exit_code != kExitOk) return {false, "track run failed: " + r.message};
  const RunMetrics& m = r.metrics;
  const double ld = s.tracker.lookahead;
  const bool pass = m.mean_cross_track < ld / 2.0 && m.max_cross_track < ld && m.terminated &&
                    m.final_goal_distance <= s.tracker.termination_tolerance &&
                    std::abs(m.final_speed) < 0.05;
  return {pass,
          Format("mean cte %.3f < %.3f, max cte %.3f < %.3f, terminated %s at %.3f m "
                 "(d_term %.2f), final |v| %.4f m/s",
                 m.mean_cross_track, ld / 2.0, m.max_cross_track, ld,
                 m.terminated ? "yes" : "no", m.final_goal_distance,
                 s.tracker.termination_tolerance, std::abs(m.final_speed))};
}

Outcome Looping(Workspace& ws) {
  Scenario s = ws.Load("fig8_loop.json");
  s.trajectory = ws.Fig8Trajectory();
  RunOptions o;
  o.output = ws.Out("fig8_loop");
  const RunResult r = run_scenario(s, o);
  if (r.exit_code != kExitOk) return {false, "loop run failed: " + r.message};
  const std::size_t n = load_trajectory(*s.trajectory).waypoints.size();

  // Target indices only advance, except for wraps from the tail to the head.
  const auto rows = ReadCsv(ws.Out("fig8_loop") / "states.csv");
  const auto& header = rows.front();
  const auto col = static_cast<std::size_t>(
      std::find(header.begin(), header.end(), "target") - header.begin());
  long long previous = -1;
  int wraps = 0;
  int regressions = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const long long t = std::stoll(rows[i][col]);
    if (t < 0) continue;
    if (previous >= 0 && t < previous) {
      const bool wrap = previous >= static_cast<long long>(n / 2) &&
                        t < static_cast<long long>(n / 2);
      wrap ? ++wraps : ++regressions;
    }
    previous = t;
  }
  return {r.metrics.laps >= 3 && wraps >= 3 && regressions == 0,
          Format("%d laps, %d wraps over %zu waypoints, %d non-wrap regressions",
                 r.metrics.laps, wraps, n, regressions)};
}

Outcome PowertrainContracts(Workspace&) {
  const VehicleProfile profile =
      LoadProfile(fs::path(TWINFORGE_SOURCE_DIR) / "profiles" / "opencav.json");
  const PowertrainParams& p = profile.vehicle.powertrain;
  double mass = 0.0;
  for (const auto& c : profile.vehicle.corners) mass += c.mass;

  // Full-throttle launch: every shifting sample carries zero torque.
  PowertrainState s;
  double speed = 0.0;
  int shift_samples = 0;
  int torque_during_shift = 0;
  const double dt = 0.01;
  for (int k = 0; k < 6000; ++k) {
    const double wheel_rpm = speed / p.tire_radius * 60.0 / (2.0 * std::numbers::pi);
    const PowertrainOutput out =
        fullscale_powertrain_step(s, PowertrainInput{1.0, false, false, speed, wheel_rpm}, dt, p);
    if (out.shifting) {
      ++shift_samples;
      torque_during_shift += out.total_torque != 0.0 ? 1 : 0;
    }
    speed += out.total_torque / p.tire_radius / mass * dt;
  }

  PowertrainState parked;
  parked.gear = Gear{2};
  const PowertrainOutput park =
      fullscale_powertrain_step(parked, PowertrainInput{0.0, false, true, 0.0, 0.0}, dt, p);
  const bool parks = park.gear == Gear{Gear::kPark} && park.total_torque == 0.0;

  // tau_drop * |delta| = 0.88, 0.90, 0.92.
  const double below = differential_split(100.0, 0.44, 2.0).right;
  const double at = differential_split(100.0, 0.45, 2.0).right;
  const double above = differential_split(100.0, 0.46, 2.0).right;
  const bool clamps = std::abs(below - 12.0) < 1e-12 && std::abs(at - 10.0) < 1e-12 &&
                      std::abs(above - 10.0) < 1e-12;

  return {shift_samples > 0 && torque_during_shift == 0 && parks && clamps,
          Format("%d shift samples with %d non-zero torque, top gear %d; park %s; "
                 "inner torque at drop 0.88/0.90/0.92: %.1f/%.1f/%.1f",
                 shift_samples, torque_during_shift, s.gear.index, parks ? "yes" : "no", below,
                 at, above)};
}

struct Criterion {
  int id;
  const char* name;
  double budget;  // s
  Outcome (*run)(Workspace&);
};

constexpr Criterion kCriteria[] = {
    {1, "ackermann identity", 1.0, AckermannIdentity},
    {2, "tire spline", 1.0, TireSplineKnots},
    {3, "lidar oracle", 5.0, LidarOracle},
    {4, "3d-to-2d surrogate", 10.0, SurrogateEquivalence},
    {5, "camera projection", 1.0, CameraProjection},
    {6, "replay determinism", 30.0, ReplayDeterminism},
    {7, "mapping", 60.0, Mapping},
    {8, "end-to-end pipeline", 300.0, EndToEnd},
    {9, "looping", 300.0, Looping},
    {10, "powertrain contracts", 1.0, PowertrainContracts},
};

}  // namespace
}  // namespace twinforge

int main(int argc, char** argv) {
  using namespace twinforge;
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  Workspace ws;
  int failed = 0;
  for (const Criterion& c : kCriteria) {
    if (!only.empty() && only.count(c.id) == 0) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run(ws);
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed <= c.budget;
    const bool pass = outcome.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("C%-2d %s  %-22s %s [%.2f s / %.0f s%s]\n", c.id, pass ? "PASS" : "FAIL", c.name,
                outcome.detail.c_str(), elapsed, c.budget, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  std::printf("%d failed\n", failed);
  return failed == 0 ? 0 : 1;
}
