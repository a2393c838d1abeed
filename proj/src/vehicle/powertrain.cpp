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

#include "twinforge/vehicle/powertrain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <spdlog/spdlog.h>

#include "twinforge/common/error.hpp"

namespace twinforge {
namespace {

constexpr double kMetersPerMile = 1609.344;
constexpr double kMetersPerInch = 0.0254;

double GearRatio(Gear gear, const PowertrainParams& params) {
  if (gear.is_forward()) {
    const auto i = static_cast<std::size_t>(gear.index - 1);
    return i < params.gear_ratios.size() ? params.gear_ratios[i] : 0.0;
  }
  if (gear.index == Gear::kReverse) return params.reverse_ratio;
  return 0.0;
}

void BeginShift(PowertrainState& state, Gear target,
                const PowertrainParams& params) {
  state.pending = target;
  state.shift_remaining = params.shift_duration;
  if (!(state.shift_remaining > 0.0)) state.gear = target;
}

}  // namespace

std::string GearLabel(Gear gear) {
  switch (gear.index) {
    case Gear::kPark:
      return "P";
    case Gear::kReverse:
      return "R";
    case Gear::kNeutral:
      return "N";
    default:
      return std::to_string(gear.index);
  }
}

double WheelInertia(const PowertrainParams& params) {
  return 0.5 * params.wheel_mass * params.wheel_radius * params.wheel_radius;
}

double smallscale_drive_torque(double throttle,
                               const PowertrainParams& params) {
  if (throttle < -1.0 || throttle > 1.0) {
    spdlog::warn("throttle {} outside [-1, 1], clamped", throttle);
    throttle = std::clamp(throttle, -1.0, 1.0);
  }
  return WheelInertia(params) * (throttle * params.max_wheel_accel);
}

double RoadSpeedRpm(double speed, double gear_ratio,
                    const PowertrainParams& params) {
  const double v_mph = std::abs(speed) * 3600.0 / kMetersPerMile;
  const double r_tire_in = params.tire_radius / kMetersPerInch;
  if (!(r_tire_in > 0.0)) return 0.0;
  return v_mph * 5280.0 * 12.0 / (60.0 * 2.0 * std::numbers::pi * r_tire_in) *
         params.final_drive * gear_ratio;
}

double EngineTorque(double rpm, const PowertrainParams& params) {
  const auto& curve = params.torque_curve;
  if (curve.empty()) return 0.0;
  if (rpm <= curve.front().first) return curve.front().second;
  if (rpm >= curve.back().first) return curve.back().second;
  const auto upper = std::upper_bound(
      curve.begin(), curve.end(), rpm,
      [](double value, const auto& knot) { return value < knot.first; });
  const auto lower = upper - 1;
  const double u = (rpm - lower->first) / (upper->first - lower->first);
  return lower->second + u * (upper->second - lower->second);
}

PowertrainOutput fullscale_powertrain_step(PowertrainState& state,
                                           const PowertrainInput& input,
                                           double dt,
                                           const PowertrainParams& params) {
  if (params.torque_curve.empty() || params.gear_ratios.empty()) {
    throw Error(ErrorCode::kFailedPrecondition, "powertrain unconfigured");
  }
  const double throttle = std::clamp(input.throttle, 0.0, 1.0);
  const bool standstill = std::abs(input.speed) < kStandstillSpeed;
  const bool was_shifting = state.shifting();
  bool direction_mismatch = false;

  if (was_shifting) {
    state.shift_remaining -= dt;
    if (state.shift_remaining <= 0.0) {
      state.shift_remaining = 0.0;
      state.gear = state.pending;
    }
  } else if (standstill && throttle == 0.0) {
    state.gear.index = input.handbrake ? Gear::kPark : Gear::kNeutral;
  } else if (state.gear.index == Gear::kPark ||
             state.gear.index == Gear::kNeutral) {
    if (state.gear.index == Gear::kPark && !input.handbrake) {
      state.gear.index = Gear::kNeutral;
    }
    if (state.gear.index == Gear::kNeutral && throttle > 0.0) {
      BeginShift(state, Gear{input.reverse ? Gear::kReverse : 1}, params);
    }
  } else if (state.gear.is_forward() == input.reverse) {
    // Drive <-> reverse only through neutral, and only once stopped.
    direction_mismatch = true;
    if (standstill) state.gear.index = Gear::kNeutral;
  } else if (state.gear.is_forward()) {
    const int g = state.gear.index;
    const int top = static_cast<int>(params.gear_ratios.size());
    const auto shift_index = static_cast<std::size_t>(g - 1);
    if (shift_index < params.shift_map.size()) {
      const ShiftPoint& sp = params.shift_map[shift_index];
      const double road_rpm =
          RoadSpeedRpm(input.speed, GearRatio(state.gear, params), params);
      if (road_rpm > sp.upshift_rpm && g < top) {
        BeginShift(state, Gear{g + 1}, params);
      } else if (road_rpm < sp.downshift_rpm && g > 1) {
        BeginShift(state, Gear{g - 1}, params);
      }
    }
  }

  const double ratio = GearRatio(state.gear, params);
  const double target =
      params.idle_rpm + std::abs(input.wheel_rpm) * params.final_drive * ratio;
  const double tau = params.rpm_time_constant;
  const double blend = tau > 0.0 ? 1.0 - std::exp(-dt / tau) : 1.0;
  state.rpm += (target - state.rpm) * blend;

  PowertrainOutput out;
  out.rpm = state.rpm;
  out.gear = state.gear;
  out.shifting = was_shifting || state.shifting();
  if (!out.shifting && state.gear.is_drive() && !direction_mismatch &&
      throttle > 0.0) {
    const double shaping = std::pow(throttle, params.throttle_exponent - 1.0);
    out.total_torque = EngineTorque(state.rpm, params) * ratio *
                       params.final_drive * throttle * shaping;
    if (state.gear.index == Gear::kReverse) out.total_torque = -out.total_torque;
  }
  return out;
}

double drive_split(double total_torque, DriveConfig config) {
  return config == DriveConfig::kAWD ? total_torque / 4.0 : total_torque / 2.0;
}

bool IsDriven(DriveConfig config, bool front_axle) {
  switch (config) {
    case DriveConfig::kFWD:
      return front_axle;
    case DriveConfig::kRWD:
      return !front_axle;
    case DriveConfig::kAWD:
      return true;
  }
  return false;
}

WheelTorquePair differential_split(double torque_out, double steer,
                                   double torque_drop) {
  const double negative = std::min(steer, 0.0);
  const double positive = std::max(steer, 0.0);
  const double left_drop = std::clamp(torque_drop * std::abs(negative), 0.0, 0.9);
  const double right_drop =
      std::clamp(torque_drop * std::abs(positive), 0.0, 0.9);
  return {torque_out * (1.0 - left_drop), torque_out * (1.0 - right_drop)};
}

}  // namespace twinforge
