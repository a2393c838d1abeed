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

#ifndef TWINFORGE_VEHICLE_VEHICLE_MODEL_HPP_
#define TWINFORGE_VEHICLE_VEHICLE_MODEL_HPP_

#include <array>
#include <string>

#include "twinforge/vehicle/aero.hpp"
#include "twinforge/vehicle/brake.hpp"
#include "twinforge/vehicle/powertrain.hpp"
#include "twinforge/vehicle/steering.hpp"
#include "twinforge/vehicle/suspension.hpp"
#include "twinforge/vehicle/tire.hpp"
#include "twinforge/worldcore/rigid_body.hpp"
#include "twinforge/worldcore/world.hpp"

namespace twinforge {

// Longitudinal limits of the gym (kinematic bicycle) plant.
struct KinematicParams {
  double max_accel = 2.0;    // m/s^2 at full throttle
  double max_decel = 4.0;    // m/s^2 at full brake
  double coast_decel = 0.5;  // m/s^2 with zero throttle
};

struct VehicleParams {
  std::string name;
  Scale scale = Scale::kSmall;
  // Sprung corner masses in FL, FR, RL, RR order. Positions are in the
  // geometric frame: x forward, y left, z up, origin on the ground midway
  // between the axles.
  std::array<PointMass, 4> corners;
  PowertrainParams powertrain;
  BrakeParams brake;
  SteeringParams steering;
  SuspensionParams suspension;
  TireSpline longitudinal_tire;
  TireSpline lateral_tire;
  double nominal_load = 0.0;  // N; 0 selects the static per-wheel load
  AeroParams aero;
  KinematicParams kinematic;
  int substeps = 20;
};

struct DriveCommand {
  double throttle = 0.0;  // [-1, 1]; full-scale reads negative as reverse
  double steering = 0.0;  // rad, positive turns left
  double brake = 0.0;     // [0, 1]
  bool handbrake = false;

  friend bool operator==(const DriveCommand&, const DriveCommand&) = default;
};

// Body pose is the vehicle frame: origin at the ground projection of the
// centre of mass, x forward, y left, z up.
struct VehicleState {
  RigidBodyState body;
  std::array<WheelState, 4> wheels{};
  double steering = 0.0;  // rad, actuator position
  double throttle = 0.0;  // applied (clamped) throttle
  double brake = 0.0;
  bool handbrake = false;
  PowertrainState powertrain;
  Vec3 acceleration = Vec3::Zero();  // m/s^2, body frame, kinematic
  double time = 0.0;

  double speed() const;  // signed longitudinal speed
  double yaw() const { return body.pose.yaw(); }
};

// Everything derived once from VehicleParams.
class VehicleModel {
 public:
  explicit VehicleModel(VehicleParams params);

  const VehicleParams& params() const { return params_; }
  const MassProperties& mass_properties() const { return mass_; }
  // Wheel contact positions relative to the COM, body frame.
  const std::array<Vec3, 4>& wheel_positions() const { return wheel_pos_; }
  const std::array<double, 4>& corner_masses() const { return corner_mass_; }
  double nominal_load() const { return nominal_load_; }
  // Distance from the COM back to the rear axle.
  double rear_axle_offset() const { return rear_offset_; }

  // Vehicle resting on its wheels at the given planar pose.
  VehicleState InitialState(double x, double y, double yaw) const;

  // Double-track planar model with per-corner heave, advanced by dt in
  // params().substeps internal steps. Throws kDiverged on non-finite state.
  VehicleState Step(const VehicleState& state, const DriveCommand& command,
                    const World& world, double dt) const;

  // Gym plant: kinematic bicycle with the same steering actuator.
  VehicleState KinematicStep(const VehicleState& state,
                             const DriveCommand& command, double dt) const;

 private:
  VehicleState Substep(const VehicleState& state, const DriveCommand& command,
                       const World& world, double h) const;

  VehicleParams params_;
  MassProperties mass_;
  std::array<Vec3, 4> wheel_pos_{};
  std::array<double, 4> corner_mass_{};
  std::array<double, 4> lever_arm_{};
  double nominal_load_ = 0.0;
  double rear_offset_ = 0.0;
};

VehicleState vehicle_step(const VehicleState& state,
                          const DriveCommand& command, const World& world,
                          const VehicleParams& params, double dt);

// Translational plus rotational kinetic energy of the chassis.
double KineticEnergy(const VehicleState& state, const MassProperties& mass);

}  // namespace twinforge

#endif  // TWINFORGE_VEHICLE_VEHICLE_MODEL_HPP_
