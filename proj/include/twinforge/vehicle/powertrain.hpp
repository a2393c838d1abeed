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

#ifndef TWINFORGE_VEHICLE_POWERTRAIN_HPP_
#define TWINFORGE_VEHICLE_POWERTRAIN_HPP_

#include <string>
#include <utility>
#include <vector>

namespace twinforge {

enum class Scale { kSmall, kFull };
enum class DriveConfig { kFWD, kRWD, kAWD };

// Transmission position. Forward gears are 1..n, reverse is -1.
struct Gear {
  static constexpr int kPark = -2;
  static constexpr int kReverse = -1;
  static constexpr int kNeutral = 0;

  int index = kNeutral;

  bool is_forward() const { return index >= 1; }
  bool is_drive() const { return index >= 1 || index == kReverse; }
  friend bool operator==(Gear, Gear) = default;
};

std::string GearLabel(Gear gear);

struct ShiftPoint {
  double upshift_rpm = 0.0;
  double downshift_rpm = 0.0;
};

struct PowertrainParams {
  Scale variant = Scale::kSmall;
  double wheel_mass = 0.0;    // kg
  double wheel_radius = 0.0;  // m
  // Small-scale: commanded wheel angular acceleration at full throttle.
  double max_wheel_accel = 0.0;  // rad/s^2

  // Full-scale.
  double idle_rpm = 0.0;
  std::vector<std::pair<double, double>> torque_curve;  // (rpm, N m)
  std::vector<double> gear_ratios;                      // forward gears
  double reverse_ratio = 0.0;
  double final_drive = 1.0;
  std::vector<ShiftPoint> shift_map;  // one per forward gear
  double throttle_exponent = 1.0;
  double tire_radius = 0.0;  // m
  double rpm_time_constant = 0.3;  // s
  double shift_duration = 0.5;     // s

  double torque_drop = 0.0;
  DriveConfig drive = DriveConfig::kRWD;
};

// I_w = 1/2 m_w r_w^2.
double WheelInertia(const PowertrainParams& params);

// Small-scale motor torque per driven wheel: I_w * throttle * max_wheel_accel.
// Throttle outside [-1, 1] is clamped with a warning.
double smallscale_drive_torque(double throttle, const PowertrainParams& params);

struct PowertrainState {
  double rpm = 0.0;
  Gear gear;
  Gear pending;
  double shift_remaining = 0.0;  // s; > 0 while the clutch is open

  bool shifting() const { return shift_remaining > 0.0; }
};

struct PowertrainInput {
  double throttle = 0.0;  // [0, 1]
  bool reverse = false;   // requested direction
  bool handbrake = false;
  double speed = 0.0;      // signed longitudinal vehicle speed, m/s
  double wheel_rpm = 0.0;  // average driven-wheel RPM, signed
};

struct PowertrainOutput {
  double rpm = 0.0;
  Gear gear;
  double total_torque = 0.0;  // N m at the differential input
  bool shifting = false;
};

// Vehicle speed below which the transmission treats the car as stationary.
inline constexpr double kStandstillSpeed = 0.05;  // m/s

// Engine speed implied by the road speed in the given gear ratio.
double RoadSpeedRpm(double speed, double gear_ratio,
                    const PowertrainParams& params);

double EngineTorque(double rpm, const PowertrainParams& params);

// Advances engine RPM, automatic transmission and returns the total torque.
PowertrainOutput fullscale_powertrain_step(PowertrainState& state,
                                           const PowertrainInput& input,
                                           double dt,
                                           const PowertrainParams& params);

// Per driven wheel: tau_total / 2 for FWD/RWD, / 4 for AWD.
double drive_split(double total_torque, DriveConfig config);

bool IsDriven(DriveConfig config, bool front_axle);

struct WheelTorquePair {
  double left = 0.0;
  double right = 0.0;
};

// Left receives tau_out * (1 - drop |min(delta, 0)|), right
// tau_out * (1 - drop |max(delta, 0)|); each drop product clamped to [0, 0.9].
WheelTorquePair differential_split(double torque_out, double steer,
                                   double torque_drop);

}  // namespace twinforge

#endif  // TWINFORGE_VEHICLE_POWERTRAIN_HPP_
