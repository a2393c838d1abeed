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

#include "twinforge/simcli/profile.hpp"

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

constexpr double kDeg = std::numbers::pi / 180.0;
const std::string kCtx = "profile";

TireKnots ParseKnots(const Json& j, const TireKnots& d) {
  TireKnots k;
  k.zero_slip = Get(j, "zero_slip", d.zero_slip, kCtx);
  k.zero_force = Get(j, "zero_force", d.zero_force, kCtx);
  k.extremum_slip = Get(j, "extremum_slip", d.extremum_slip, kCtx);
  k.extremum_force = Get(j, "extremum_force", d.extremum_force, kCtx);
  k.asymptote_slip = Get(j, "asymptote_slip", d.asymptote_slip, kCtx);
  k.asymptote_force = Get(j, "asymptote_force", d.asymptote_force, kCtx);
  k.stiffness = Get(j, "stiffness", d.stiffness, kCtx);
  return k;
}

DriveConfig ParseDrive(const std::string& s) {
  if (s == "FWD" || s == "fwd") return DriveConfig::kFWD;
  if (s == "RWD" || s == "rwd") return DriveConfig::kRWD;
  if (s == "AWD" || s == "awd") return DriveConfig::kAWD;
  throw Error(ErrorCode::kBadFormat, "profile: drive must be FWD, RWD or AWD");
}

void ParsePowertrain(const Json& j, PowertrainParams& p) {
  p.drive = ParseDrive(Get<std::string>(j, "drive", "RWD", kCtx));
  p.max_wheel_accel = Get(j, "max_wheel_accel", p.max_wheel_accel, kCtx);
  p.torque_drop = Get(j, "torque_drop", p.torque_drop, kCtx);
  p.idle_rpm = Get(j, "idle_rpm", p.idle_rpm, kCtx);
  p.torque_curve = Get(j, "torque_curve", p.torque_curve, kCtx);
  p.gear_ratios = Get(j, "gear_ratios", p.gear_ratios, kCtx);
  p.reverse_ratio = Get(j, "reverse_ratio", p.reverse_ratio, kCtx);
  p.final_drive = Get(j, "final_drive", p.final_drive, kCtx);
  p.throttle_exponent = Get(j, "throttle_exponent", p.throttle_exponent, kCtx);
  p.tire_radius = Get(j, "tire_radius", p.wheel_radius, kCtx);
  p.rpm_time_constant = Get(j, "rpm_time_constant", p.rpm_time_constant, kCtx);
  p.shift_duration = Get(j, "shift_duration", p.shift_duration, kCtx);
  const auto shifts =
      Get(j, "shift_map", std::vector<std::pair<double, double>>{}, kCtx);
  p.shift_map.clear();
  for (const auto& [up, down] : shifts) p.shift_map.push_back({up, down});
  if (p.variant == Scale::kFull && p.shift_map.size() != p.gear_ratios.size()) {
    throw Error(ErrorCode::kBadFormat,
                "profile: shift_map needs one entry per forward gear");
  }
}

Lidar2DParams ParsePlanar(const Json& j) {
  Lidar2DParams p;
  const auto mount = Get(j, "mount", std::vector<double>{0.0, 0.0, 0.0}, kCtx);
  if (mount.size() != 3) throw Error(ErrorCode::kBadFormat, "profile: lidar mount needs x, y, z");
  p.mount = SE3::FromTranslation(Vec3(mount[0], mount[1], mount[2]));
  p.range_min = Get(j, "range_min", p.range_min, kCtx);
  p.range_max = Get(j, "range_max", p.range_max, kCtx);
  const double res = Get(j, "resolution_deg", 1.0, kCtx);
  p.angle_increment = res * kDeg;
  p.angle_min = Get(j, "angle_min_deg", -180.0, kCtx) * kDeg;
  p.angle_max = Get(j, "angle_max_deg", 180.0 - res, kCtx) * kDeg;
  p.update_rate = Get(j, "rate", p.update_rate, kCtx);
  return p;
}

}  // namespace

VehicleProfile ParseProfile(std::string_view json_text) {
  const Json j = internal::ParseJson(std::string(json_text), kCtx);
  VehicleProfile out;
  VehicleParams& v = out.vehicle;
  v.name = Get<std::string>(j, "name", "vehicle", kCtx);
  const std::string scale = Get<std::string>(j, "scale", "small", kCtx);
  if (scale != "small" && scale != "full") {
    throw Error(ErrorCode::kBadFormat, "profile: scale must be small or full");
  }
  v.scale = scale == "small" ? Scale::kSmall : Scale::kFull;
  v.powertrain.variant = v.scale;

  const double mass = Require<double>(j, "mass", kCtx);
  const double front = Get(j, "front_fraction", 0.5, kCtx);
  const double l = Require<double>(j, "wheelbase", kCtx);
  const double w = Require<double>(j, "track_width", kCtx);
  const double h = Require<double>(j, "cg_height", kCtx);
  if (!(mass > 0.0) || !(front > 0.0 && front < 1.0) || !(l > 0.0) || !(w > 0.0)) {
    throw Error(ErrorCode::kBadFormat, "profile: mass, front_fraction, wheelbase, track_width out of range");
  }
  const double mf = 0.5 * mass * front;
  const double mr = 0.5 * mass * (1.0 - front);
  v.corners = {PointMass{mf, Vec3(0.5 * l, 0.5 * w, h)},
               PointMass{mf, Vec3(0.5 * l, -0.5 * w, h)},
               PointMass{mr, Vec3(-0.5 * l, 0.5 * w, h)},
               PointMass{mr, Vec3(-0.5 * l, -0.5 * w, h)}};

  const Json& wheel = Section(j, "wheel");
  v.powertrain.wheel_mass = Require<double>(wheel, "mass", kCtx);
  v.powertrain.wheel_radius = Require<double>(wheel, "radius", kCtx);
  ParsePowertrain(Section(j, "powertrain"), v.powertrain);

  const Json& brake = Section(j, "brake");
  v.brake.idle_torque = Get(brake, "idle_torque", v.brake.idle_torque, kCtx);
  v.brake.braking_distance = Get(brake, "braking_distance", v.brake.braking_distance, kCtx);
  v.brake.disk_radius = Get(brake, "disk_radius", v.brake.disk_radius, kCtx);

  const Json& steer = Section(j, "steering");
  v.steering.limit = Get(steer, "limit", v.steering.limit, kCtx);
  v.steering.sensitivity = Get(steer, "sensitivity", v.steering.sensitivity, kCtx);
  v.steering.speed_sensitivity =
      Get(steer, "speed_sensitivity", v.steering.speed_sensitivity, kCtx);
  v.steering.max_speed = Get(steer, "max_speed", v.steering.max_speed, kCtx);
  v.steering.wheelbase = l;
  v.steering.track_width = w;

  const Json& susp = Section(j, "suspension");
  v.suspension.natural_frequency =
      Get(susp, "natural_frequency", v.suspension.natural_frequency, kCtx);
  v.suspension.damping_ratio = Get(susp, "damping_ratio", v.suspension.damping_ratio, kCtx);
  v.suspension.force_offset = Get(susp, "force_offset", v.suspension.force_offset, kCtx);
  v.suspension.equilibrium = Get(susp, "equilibrium", v.suspension.equilibrium, kCtx);
  v.suspension.anti_roll_stiffness =
      Get(susp, "anti_roll_stiffness", v.suspension.anti_roll_stiffness, kCtx);
  if (susp.contains("stiffness")) v.suspension.stiffness = Require<double>(susp, "stiffness", kCtx);
  if (susp.contains("damping")) v.suspension.damping = Require<double>(susp, "damping", kCtx);

  const Json& tires = Section(j, "tires");
  try {
    v.longitudinal_tire = TireSpline(ParseKnots(Section(tires, "longitudinal"), TireKnots{}));
    v.lateral_tire = TireSpline(ParseKnots(Section(tires, "lateral"), TireKnots{}));
  } catch (const Error& e) {
    throw Error(ErrorCode::kBadFormat, std::string("profile: ") + e.what());
  }
  v.nominal_load = Get(tires, "nominal_load", 0.0, kCtx);

  const Json& aero = Section(j, "aero");
  v.aero.max_drag = Get(aero, "max_drag", 0.0, kCtx);
  v.aero.idle_drag = Get(aero, "idle_drag", 0.0, kCtx);
  v.aero.reverse_drag = Get(aero, "reverse_drag", 0.0, kCtx);
  v.aero.max_speed = Get(aero, "max_speed", 0.0, kCtx);
  v.aero.reverse_speed = Get(aero, "reverse_speed", 0.0, kCtx);
  v.aero.downforce_coefficient = Get(aero, "downforce_coefficient", 0.0, kCtx);
  v.aero.linear_drag = Get(aero, "linear_drag", 0.0, kCtx);
  v.aero.angular_drag = Get(aero, "angular_drag", 0.0, kCtx);

  const Json& kin = Section(j, "kinematic");
  v.kinematic.max_accel = Get(kin, "max_accel", v.kinematic.max_accel, kCtx);
  v.kinematic.max_decel = Get(kin, "max_decel", v.kinematic.max_decel, kCtx);
  v.kinematic.coast_decel = Get(kin, "coast_decel", v.kinematic.coast_decel, kCtx);
  v.substeps = Get(j, "substeps", v.substeps, kCtx);

  const Json& lidar = Section(j, "lidar");
  const std::string type = Get<std::string>(lidar, "type", "2d", kCtx);
  if (type != "2d" && type != "3d" && type != "none") {
    throw Error(ErrorCode::kBadFormat, "profile: lidar type must be 2d, 3d or none");
  }
  out.lidar.enabled = type != "none";
  out.lidar.three_d = type == "3d";
  out.lidar.params.planar = ParsePlanar(lidar);
  out.lidar.params.channel_min = Get(lidar, "channel_min_deg", -15.0, kCtx) * kDeg;
  out.lidar.params.channel_max = Get(lidar, "channel_max_deg", 15.0, kCtx) * kDeg;
  out.lidar.params.channel_increment = Get(lidar, "channel_resolution_deg", 2.0, kCtx) * kDeg;
  try {
    Validate(out.lidar.params);
  } catch (const Error& e) {
    throw Error(ErrorCode::kBadFormat, std::string("profile: ") + e.what());
  }

  const Json& track = Section(j, "tracking");
  out.waypoint_spacing =
      Get(track, "spacing", v.scale == Scale::kSmall ? 0.5 : 2.0, kCtx);
  out.cruise_speed = Get(track, "cruise_speed", out.cruise_speed, kCtx);
  TrackerConfig& t = out.tracker;
  t.lookahead = Get(track, "lookahead", t.lookahead, kCtx);
  t.gains.kp = Get(track, "kp", t.gains.kp, kCtx);
  t.gains.ki = Get(track, "ki", t.gains.ki, kCtx);
  t.gains.kd = Get(track, "kd", t.gains.kd, kCtx);
  t.gains.integral_limit = Get(track, "integral_limit", t.gains.integral_limit, kCtx);
  t.termination_tolerance = Get(track, "termination_tolerance", out.waypoint_spacing, kCtx);
  t.approach_decel = Get(track, "approach_decel", t.approach_decel, kCtx);
  t.min_speed = Get(track, "min_speed", t.min_speed, kCtx);
  t.wheelbase = l;
  t.max_steer = v.steering.limit;
  return out;
}

VehicleProfile LoadProfile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open profile " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseProfile(ss.str());
}

std::filesystem::path ResolveProfile(
    const std::string& name, const std::vector<std::filesystem::path>& search) {
  const std::filesystem::path as_path(name);
  if (name.find('/') != std::string::npos || as_path.extension() == ".json") {
    return as_path;
  }
  for (const auto& dir : search) {
    const auto candidate = dir / (name + ".json");
    if (std::filesystem::exists(candidate)) return candidate;
  }
  throw Error(ErrorCode::kNotFound, "unknown vehicle profile '" + name + "'");
}

}  // namespace twinforge
