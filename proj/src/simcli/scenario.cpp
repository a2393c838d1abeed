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

#include "twinforge/simcli/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json_util.hpp"

namespace twinforge {
namespace {

using internal::Get;
using internal::Json;
using internal::Require;
using internal::Section;

const std::string kCtx = "scenario";

std::filesystem::path Resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

std::filesystem::path RequireFile(const std::filesystem::path& path, const char* what) {
  if (!std::filesystem::is_regular_file(path)) {
    throw Error(ErrorCode::kNotFound, std::string(what) + " not found: " + path.string());
  }
  return path;
}

Vec2 ParseVec2(const Json& j, const char* key, const Vec2& fallback) {
  const auto v = Get(j, key, std::vector<double>{fallback.x(), fallback.y()}, kCtx);
  if (v.size() != 2) throw Error(ErrorCode::kBadFormat, kCtx + ": '" + key + "' needs [x, y]");
  return {v[0], v[1]};
}

RouteSpec ParseRoute(const Json& j) {
  RouteSpec r;
  if (j.empty()) return r;
  const auto shape = Require<std::string>(j, "shape", kCtx);
  if (shape == "square") {
    r.shape = RouteSpec::Shape::kSquare;
  } else if (shape == "circle") {
    r.shape = RouteSpec::Shape::kCircle;
  } else if (shape == "figure_eight") {
    r.shape = RouteSpec::Shape::kFigureEight;
  } else if (shape == "points") {
    r.shape = RouteSpec::Shape::kPoints;
  } else {
    throw Error(ErrorCode::kBadFormat,
                kCtx + ": route shape must be square, circle, figure_eight or points");
  }
  r.center = ParseVec2(j, "center", r.center);
  r.size = Get(j, "size", r.size, kCtx);
  r.heading = Get(j, "heading", r.heading, kCtx);
  r.speed = Get(j, "speed", r.speed, kCtx);
  r.laps = Get(j, "laps", r.laps, kCtx);
  r.step = Get(j, "step", r.step, kCtx);
  for (const auto& p : Get(j, "points", std::vector<std::vector<double>>{}, kCtx)) {
    if (p.size() != 2) throw Error(ErrorCode::kBadFormat, kCtx + ": route points need [x, y]");
    r.points.emplace_back(p[0], p[1]);
  }
  if (!(r.size > 0.0) || r.laps < 1 || !(r.step > 0.0) || r.speed < 0.0) {
    throw Error(ErrorCode::kBadFormat, kCtx + ": route size, laps, step or speed out of range");
  }
  if (r.shape == RouteSpec::Shape::kPoints && r.points.size() < 2) {
    throw Error(ErrorCode::kBadFormat, kCtx + ": route needs at least two points");
  }
  return r;
}

// Arc-length resampling of a dense polyline.
std::vector<Vec2> Resample(const std::vector<Vec2>& dense, double step) {
  std::vector<Vec2> out{dense.front()};
  double carried = 0.0;
  for (std::size_t i = 1; i < dense.size(); ++i) {
    Vec2 a = dense[i - 1];
    const Vec2 b = dense[i];
    double seg = (b - a).norm();
    while (carried + seg >= step) {
      const double s = (step - carried) / seg;
      a = a + s * (b - a);
      out.push_back(a);
      seg = (b - a).norm();
      carried = 0.0;
    }
    carried += seg;
  }
  if ((out.back() - dense.back()).norm() > 1e-9) out.push_back(dense.back());
  return out;
}

std::vector<Vec2> OneLap(const RouteSpec& r) {
  constexpr double kPi = std::numbers::pi;
  std::vector<Vec2> pts;
  switch (r.shape) {
    case RouteSpec::Shape::kSquare: {
      const double h = 0.5 * r.size;
      pts = {{-h, -h}, {h, -h}, {h, h}, {-h, h}, {-h, -h}};
      break;
    }
    case RouteSpec::Shape::kCircle:
      for (int k = 0; k <= 720; ++k) {
        const double t = -0.5 * kPi + 2.0 * kPi * k / 720.0;
        pts.emplace_back(r.size * std::cos(t), r.size * std::sin(t));
      }
      break;
    case RouteSpec::Shape::kFigureEight:
      // Lemniscate of Gerono, starting at the crossing heading +x+y.
      for (int k = 0; k <= 2000; ++k) {
        const double t = 2.0 * kPi * k / 2000.0;
        pts.emplace_back(r.size * std::sin(t), r.size * std::sin(t) * std::cos(t));
      }
      break;
    case RouteSpec::Shape::kPoints:
      return r.points;
    case RouteSpec::Shape::kNone:
      break;
  }
  const double c = std::cos(r.heading);
  const double s = std::sin(r.heading);
  for (Vec2& p : pts) p = r.center + Vec2(c * p.x() - s * p.y(), s * p.x() + c * p.y());
  return pts;
}

}  // namespace

std::string_view StageName(Stage stage) {
  switch (stage) {
    case Stage::kMap:
      return "map";
    case Stage::kRecord:
      return "record";
    case Stage::kTrack:
      return "track";
  }
  return "map";
}

std::optional<Stage> ParseStage(std::string_view text) {
  if (text == "map") return Stage::kMap;
  if (text == "record") return Stage::kRecord;
  if (text == "track") return Stage::kTrack;
  return std::nullopt;
}

Trajectory BuildRoute(const RouteSpec& route, double speed) {
  Trajectory traj;
  if (route.shape == RouteSpec::Shape::kNone) return traj;
  const std::vector<Vec2> lap = OneLap(route);
  std::vector<Vec2> dense;
  for (int k = 0; k < route.laps; ++k) {
    dense.insert(dense.end(), lap.begin() + (k == 0 ? 0 : 1), lap.end());
  }
  const std::vector<Vec2> pts = Resample(dense, route.step);
  traj.spacing = route.step;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec2 d = i + 1 < pts.size() ? pts[i + 1] - pts[i] : pts[i] - pts[i - 1];
    traj.waypoints.push_back({pts[i].x(), pts[i].y(), std::atan2(d.y(), d.x()), speed});
  }
  return traj;
}

Scenario ParseScenario(std::string_view json_text, const std::filesystem::path& base_dir,
                       const std::vector<std::filesystem::path>& profile_dirs) {
  const Json j = internal::ParseJson(std::string(json_text), kCtx);
  if (!j.is_object()) throw Error(ErrorCode::kBadFormat, kCtx + ": expected an object");
  Scenario s;
  s.world = RequireFile(Resolve(base_dir, Require<std::string>(j, "world", kCtx)), "world file");

  s.vehicle = Require<std::string>(j, "vehicle", kCtx);
  std::vector<std::filesystem::path> search{base_dir / "profiles", base_dir / ".." / "profiles"};
  search.insert(search.end(), profile_dirs.begin(), profile_dirs.end());
  std::filesystem::path profile_path = ResolveProfile(s.vehicle, search);
  if (profile_path.is_relative() && !std::filesystem::exists(profile_path)) {
    profile_path = base_dir / profile_path;
  }
  s.profile = LoadProfile(RequireFile(profile_path, "vehicle profile"));

  const auto mode = Get<std::string>(j, "mode", "sim", kCtx);
  const auto parsed_mode = ParseMode(mode);
  if (!parsed_mode) throw Error(ErrorCode::kBadFormat, kCtx + ": unknown mode '" + mode + "'");
  s.mode = *parsed_mode;
  s.dt = Get(j, "dt", s.dt, kCtx);
  s.duration = Get(j, "duration", s.duration, kCtx);
  s.seed = Get(j, "seed", s.seed, kCtx);
  if (!(s.dt > 0.0) || !(s.duration > 0.0)) {
    throw Error(ErrorCode::kBadFormat, kCtx + ": dt and duration must be positive");
  }
  const auto stage = Get<std::string>(j, "stage", "map", kCtx);
  const auto parsed_stage = ParseStage(stage);
  if (!parsed_stage) throw Error(ErrorCode::kBadFormat, kCtx + ": unknown stage '" + stage + "'");
  s.stage = *parsed_stage;
  s.output = Resolve(base_dir, Get<std::string>(j, "output", "out", kCtx));

  if (const Json& start = Section(j, "start"); !start.empty()) {
    s.start = Pose2D{Get(start, "x", 0.0, kCtx), Get(start, "y", 0.0, kCtx),
                     Get(start, "yaw", 0.0, kCtx)};
  }
  s.route = ParseRoute(Section(j, "route"));
  if (const auto c = Get<std::string>(j, "commands", "", kCtx); !c.empty()) {
    s.commands = RequireFile(Resolve(base_dir, c), "command log");
  }
  if (const auto t = Get<std::string>(j, "trajectory", "", kCtx); !t.empty()) {
    s.trajectory = Resolve(base_dir, t);
    if (s.stage == Stage::kTrack) RequireFile(*s.trajectory, "trajectory");
  }
  if (s.stage == Stage::kTrack && !s.trajectory) {
    throw Error(ErrorCode::kBadFormat, kCtx + ": stage track needs 'trajectory'");
  }
  if (j.contains("loop")) s.loop = Require<bool>(j, "loop", kCtx);
  s.spacing = Get(j, "spacing", s.profile.waypoint_spacing, kCtx);
  if (!(s.spacing > 0.0)) throw Error(ErrorCode::kBadFormat, kCtx + ": spacing must be positive");

  s.tracker = s.profile.tracker;
  const Json& t = Section(j, "tracker");
  s.tracker.lookahead = Get(t, "lookahead", s.tracker.lookahead, kCtx);
  s.tracker.gains.kp = Get(t, "kp", s.tracker.gains.kp, kCtx);
  s.tracker.gains.ki = Get(t, "ki", s.tracker.gains.ki, kCtx);
  s.tracker.gains.kd = Get(t, "kd", s.tracker.gains.kd, kCtx);
  s.tracker.gains.integral_limit = Get(t, "integral_limit", s.tracker.gains.integral_limit, kCtx);
  s.tracker.termination_tolerance =
      Get(t, "termination_tolerance", s.spacing, kCtx);
  s.tracker.approach_decel = Get(t, "approach_decel", s.tracker.approach_decel, kCtx);
  s.tracker.min_speed = Get(t, "min_speed", s.tracker.min_speed, kCtx);
  s.stop_after_laps = Get(j, "stop_after_laps", s.stop_after_laps, kCtx);
  s.stop_when_at_rest = Get(j, "stop_when_at_rest", s.stop_when_at_rest, kCtx);

  const Json& sensors = Section(j, "sensors");
  s.sensors.lidar = Get(sensors, "lidar", s.profile.lidar.enabled, kCtx) && s.profile.lidar.enabled;
  s.sensors.ins = Get(sensors, "ins", s.sensors.ins, kCtx);
  s.sensors.encoders = Get(sensors, "encoders", s.sensors.encoders, kCtx);
  s.sensors.lidar_threads = Get(sensors, "lidar_threads", s.sensors.lidar_threads, kCtx);
  s.sensors.ins_config.gravity_inclusive =
      Get(sensors, "gravity_inclusive", s.sensors.ins_config.gravity_inclusive, kCtx);
  const Json& noise = Section(sensors, "noise");
  s.sensors.ins_config.position_sigma = Get(noise, "position", 0.0, kCtx);
  s.sensors.ins_config.accel_sigma = Get(noise, "accel", 0.0, kCtx);
  s.sensors.ins_config.gyro_sigma = Get(noise, "gyro", 0.0, kCtx);
  const auto band = Get(sensors, "z_band", std::vector<double>{s.sensors.z_lo, s.sensors.z_hi}, kCtx);
  if (band.size() != 2 || !(band[0] < band[1])) {
    throw Error(ErrorCode::kBadFormat, kCtx + ": z_band needs [z_lo, z_hi] with z_lo < z_hi");
  }
  s.sensors.z_lo = band[0];
  s.sensors.z_hi = band[1];

  const Json& g = Section(j, "grid");
  s.grid.resolution = Get(g, "resolution", s.grid.resolution, kCtx);
  s.grid.margin = Get(g, "margin", s.grid.margin, kCtx);
  s.grid.width = Get(g, "width", 0, kCtx);
  s.grid.height = Get(g, "height", 0, kCtx);
  if (g.contains("origin")) {
    const auto o = Require<std::vector<double>>(g, "origin", kCtx);
    if (o.size() != 3) throw Error(ErrorCode::kBadFormat, kCtx + ": grid origin needs [x, y, yaw]");
    s.grid.origin = Pose2D{o[0], o[1], o[2]};
  }
  if (!(s.grid.resolution > 0.0)) {
    throw Error(ErrorCode::kBadFormat, kCtx + ": grid resolution must be positive");
  }
  return s;
}

Scenario LoadScenario(const std::filesystem::path& path,
                      const std::vector<std::filesystem::path>& profile_dirs) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kNotFound, "scenario not found: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  const auto base = std::filesystem::absolute(path).parent_path();
  return ParseScenario(ss.str(), base, profile_dirs);
}

}  // namespace twinforge
