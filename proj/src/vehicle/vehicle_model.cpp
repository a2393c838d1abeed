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

#include "twinforge/vehicle/vehicle_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "twinforge/common/error.hpp"

namespace twinforge {
namespace {

// Below this speed the full-scale constant drag is tapered linearly so it can
// not push a stopped car.
constexpr double kDragTaperSpeed = 0.1;  // m/s

bool IsFinite(const VehicleState& s) {
  if (!s.body.pose.translation().allFinite() ||
      !s.body.pose.rotation().allFinite() ||
      !s.body.linear_velocity.allFinite() ||
      !s.body.angular_velocity.allFinite() || !std::isfinite(s.steering)) {
    return false;
  }
  for (const WheelState& w : s.wheels) {
    if (!std::isfinite(w.spin) || !std::isfinite(w.load) ||
        !std::isfinite(w.suspension_displacement) ||
        !std::isfinite(w.suspension_velocity)) {
      return false;
    }
  }
  return true;
}

// Wheel angles in the vehicle frame (positive = left) for a centre angle.
std::array<double, 4> WheelSteerAngles(double steer,
                                       const SteeringParams& params) {
  if (steer == 0.0) return {0.0, 0.0, 0.0, 0.0};
  // ackermann_angles takes positive as a turn toward the right wheel.
  const AckermannAngles a =
      ackermann_angles(-steer, params.wheelbase, params.track_width);
  return {-a.left, -a.right, 0.0, 0.0};
}

}  // namespace

double VehicleState::speed() const {
  const Vec3 v = body.pose.rotation().transpose() * body.linear_velocity;
  return v.x();
}

VehicleModel::VehicleModel(VehicleParams params) : params_(std::move(params)) {
  const double wheel_mass = params_.powertrain.wheel_mass;
  const double radius = params_.powertrain.wheel_radius;
  if (!(radius > 0.0) || !(wheel_mass > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "wheel mass and radius must be positive");
  }
  if (params_.substeps < 1) {
    throw Error(ErrorCode::kInvalidArgument, "substeps must be >= 1");
  }
  SprungMassSet bodies;
  for (const PointMass& c : params_.corners) bodies.push_back(c);
  for (const PointMass& c : params_.corners) {
    bodies.push_back({wheel_mass, Vec3(c.position.x(), c.position.y(), radius)});
  }
  mass_ = aggregate_inertia(bodies);
  const Vec3 com = mass_.center_of_mass;
  for (int i = 0; i < 4; ++i) {
    const Vec3& p = params_.corners[i].position;
    corner_mass_[i] = params_.corners[i].mass;
    wheel_pos_[i] = Vec3(p.x() - com.x(), p.y() - com.y(), radius);
    lever_arm_[i] = force_application_point(com.z(), radius, radius,
                                            params_.suspension.force_offset);
    // Validates stiffness early.
    spring_damper(corner_mass_[i], params_.suspension);
  }
  nominal_load_ = params_.nominal_load > 0.0 ? params_.nominal_load
                                             : mass_.mass * kGravity / 4.0;
  rear_offset_ = -0.5 * (wheel_pos_[kRearLeft].x() + wheel_pos_[kRearRight].x());
}

VehicleState VehicleModel::InitialState(double x, double y, double yaw) const {
  VehicleState s;
  s.body.pose = SE3::FromYaw(yaw, Vec3(x, y, 0.0));
  for (int i = 0; i < 4; ++i) {
    s.wheels[i].load = (corner_mass_[i] + params_.powertrain.wheel_mass) * kGravity;
  }
  s.powertrain.rpm = params_.powertrain.idle_rpm;
  return s;
}

VehicleState VehicleModel::Step(const VehicleState& state,
                                const DriveCommand& command,
                                const World& world, double dt) const {
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "dt must be positive");
  }
  const double h = dt / params_.substeps;
  VehicleState s = state;
  for (int k = 0; k < params_.substeps; ++k) {
    s = Substep(s, command, world, h);
    if (!IsFinite(s)) {
      throw Error(ErrorCode::kDiverged, "non-finite vehicle state");
    }
  }
  s.time = state.time + dt;
  return s;
}

VehicleState VehicleModel::Substep(const VehicleState& state,
                                   const DriveCommand& command,
                                   const World& world, double h) const {
  const VehicleParams& p = params_;
  const bool small = p.scale == Scale::kSmall;
  const double radius = p.powertrain.wheel_radius;
  const double wheel_inertia = WheelInertia(p.powertrain);

  VehicleState next = state;
  next.throttle = std::clamp(command.throttle, -1.0, 1.0);
  next.brake = std::clamp(command.brake, 0.0, 1.0);
  next.handbrake = command.handbrake;

  const Mat3& rot = state.body.pose.rotation();
  const Vec3 v_body = rot.transpose() * state.body.linear_velocity;
  const double yaw_rate = state.body.angular_velocity.z();
  const double speed = v_body.x();

  // Steering actuator and Ackermann linkage.
  next.steering = steering_step(state.steering, command.steering, speed,
                                p.steering, h);
  const std::array<double, 4> steer = WheelSteerAngles(next.steering, p.steering);

  // Powertrain.
  std::array<double, 4> drive{};
  double torque_out = 0.0;
  double wheel_rpm = 0.0;
  {
    int driven = 0;
    for (int i = 0; i < 4; ++i) {
      if (IsDriven(p.powertrain.drive, IsFrontWheel(i))) {
        wheel_rpm += state.wheels[i].spin;
        ++driven;
      }
    }
    wheel_rpm = wheel_rpm / std::max(driven, 1) * 60.0 / (2.0 * std::numbers::pi);
  }
  if (small) {
    torque_out = smallscale_drive_torque(next.throttle, p.powertrain);
  } else {
    PowertrainInput in;
    in.throttle = std::abs(next.throttle);
    in.reverse = next.throttle < 0.0;
    in.handbrake = command.handbrake;
    in.speed = speed;
    in.wheel_rpm = wheel_rpm;
    const PowertrainOutput out =
        fullscale_powertrain_step(next.powertrain, in, h, p.powertrain);
    torque_out = drive_split(out.total_torque, p.powertrain.drive);
  }
  for (const bool front : {true, false}) {
    if (!IsDriven(p.powertrain.drive, front)) continue;
    // Fed with the vehicle-frame angle: a left turn drops the outer wheel.
    const WheelTorquePair pair =
        differential_split(torque_out, next.steering, p.powertrain.torque_drop);
    drive[front ? kFrontLeft : kRearLeft] = pair.left;
    drive[front ? kFrontRight : kRearRight] = pair.right;
  }

  // Brakes.
  std::array<double, 4> brake{};
  {
    std::array<double, 4> combi = brake_torque(
        corner_mass_, speed, p.brake, BrakeInput::kCombi, p.scale);
    std::array<double, 4> hand{};
    if (command.handbrake) {
      hand = brake_torque(corner_mass_, speed, p.brake, BrakeInput::kHandbrake, p.scale);
    }
    if (!small) {
      // The v^2 law vanishes near rest; tau_idle is the full-scale floor.
      for (int i = 0; i < 4; ++i) {
        combi[i] = std::max(combi[i], p.brake.idle_torque);
        if (command.handbrake && !IsFrontWheel(i)) {
          hand[i] = std::max(hand[i], p.brake.idle_torque);
        }
      }
    }
    const double factor =
        small && next.throttle == 0.0 ? 1.0 : next.brake;
    for (int i = 0; i < 4; ++i) brake[i] = std::max(combi[i] * factor, hand[i]);
  }

  // Wheel spin (linearized implicit in the tire reaction), slip and tire
  // forces.
  Vec3 force_body = Vec3::Zero();
  double torque_z = 0.0;
  for (int i = 0; i < 4; ++i) {
    WheelState& w = next.wheels[i];
    const Vec3& pos = wheel_pos_[i];
    const double cvx = v_body.x() - yaw_rate * pos.y();
    const double cvy = v_body.y() + yaw_rate * pos.x();
    const double cs = std::cos(steer[i]);
    const double sn = std::sin(steer[i]);
    const double vx = cs * cvx + sn * cvy;
    const double vy = -sn * cvx + cs * cvy;
    const double load = state.wheels[i].load;
    const double scale = load / nominal_load_;
    const double denom = std::max(std::abs(vx), kSlipSpeedGuard);

    const Slip before = compute_slip(vx, vy, w.spin, radius);
    const double fx0 = tire_force(before.longitudinal, p.longitudinal_tire,
                                  load, nominal_load_);
    const double k = std::max(0.0, p.longitudinal_tire.derivative(before.longitudinal)) *
                     scale * radius / denom;
    const double implicit = wheel_inertia + h * radius * k;
    const double free_spin =
        (wheel_inertia * w.spin + h * (drive[i] - radius * fx0) +
         h * radius * k * w.spin) /
        implicit;
    const double brake_delta = h * brake[i] / implicit;
    if (std::abs(free_spin) <= brake_delta) {
      w.spin = 0.0;
    } else {
      w.spin = free_spin - std::copysign(brake_delta, free_spin);
    }
    w.steer = steer[i];
    w.revolutions += w.spin * h / (2.0 * std::numbers::pi);

    const Slip slip = compute_slip(vx, vy, w.spin, radius);
    double fx = tire_force(slip.longitudinal, p.longitudinal_tire, load,
                           nominal_load_);
    double fy =
        -tire_force(slip.lateral, p.lateral_tire, load, nominal_load_);
    // Friction ellipse on the two peak forces.
    const double fx_max = p.longitudinal_tire.knots().extremum_force * scale;
    const double fy_max = p.lateral_tire.knots().extremum_force * scale;
    if (fx_max > 0.0 && fy_max > 0.0) {
      const double usage = std::hypot(fx / fx_max, fy / fy_max);
      if (usage > 1.0) {
        fx /= usage;
        fy /= usage;
      }
    }
    const double bx = cs * fx - sn * fy;
    const double by = sn * fx + cs * fy;
    force_body.x() += bx;
    force_body.y() += by;
    torque_z += pos.x() * by - pos.y() * bx;
  }

  // Suspension and load transfer.
  {
    const double total = mass_.mass;
    const double l = p.steering.wheelbase;
    const double track = p.steering.track_width;
    const Vec3& a = state.acceleration;
    const AeroForces aero0 = aero_forces(speed, yaw_rate, torque_out,
                                         next.powertrain.gear, wheel_rpm,
                                         p.aero, p.scale);
    std::array<double, 4> travel{};
    std::array<bool, 4> grounded{};
    for (int i = 0; i < 4; ++i) {
      const SpringDamper sd = spring_damper(corner_mass_[i], p.suspension);
      const double range =
          suspension_travel(corner_mass_[i], p.suspension.equilibrium, sd.stiffness);
      const double sag = corner_mass_[i] * kGravity / sd.stiffness;
      const double extension = range - sag - state.wheels[i].suspension_displacement;
      const double contact_z = world.ground_z() - (radius + extension);
      travel[i] = normalized_travel(contact_z, radius, range);
      grounded[i] = extension >= 0.0 && extension <= range;
    }
    std::array<double, 4> roll{};
    for (const int left : {kFrontLeft, kRearLeft}) {
      const AntiRollForces f =
          anti_roll(travel[left], travel[left + 1],
                    p.suspension.anti_roll_stiffness,
                    grounded[left] && grounded[left + 1]);
      roll[left] = f.left;
      roll[left + 1] = f.right;
    }
    for (int i = 0; i < 4; ++i) {
      const double sx = IsFrontWheel(i) ? 1.0 : -1.0;
      const double sy = IsLeftWheel(i) ? 1.0 : -1.0;
      const double transfer =
          -sx * 0.5 * total * a.x() * lever_arm_[i] / l -
          sy * 0.5 * total * a.y() * lever_arm_[i] / track;
      CornerGeometry geometry;
      geometry.z_com = mass_.center_of_mass.z();
      geometry.z_wheel = radius;
      geometry.wheel_radius = radius;
      geometry.wheel_mass = p.powertrain.wheel_mass;
      const SuspensionResult r =
          suspension_step(next.wheels[i], corner_mass_[i],
                          transfer + 0.25 * aero0.downforce, roll[i], geometry,
                          p.suspension, h);
      next.wheels[i] = r.wheel;
    }

    // Aerodynamic drag.
    const Vec2 planar(v_body.x(), v_body.y());
    const double planar_speed = planar.norm();
    if (small) {
      force_body.x() -= p.aero.linear_drag * v_body.x();
      force_body.y() -= p.aero.linear_drag * v_body.y();
      torque_z -= p.aero.angular_drag * yaw_rate;
    } else if (planar_speed > 0.0) {
      const double taper = std::min(1.0, planar_speed / kDragTaperSpeed);
      force_body.x() -= aero0.drag * taper * v_body.x() / planar_speed;
      force_body.y() -= aero0.drag * taper * v_body.y() / planar_speed;
    }
  }

  // Planar rigid body: no vertical force, yaw torque only.
  const Vec3 force_world = rot * Vec3(force_body.x(), force_body.y(), 0.0);
  next.body = step_rigid_body(state.body, mass_, force_world,
                              Vec3(0.0, 0.0, torque_z), h);
  next.acceleration =
      rot.transpose() * (next.body.linear_velocity - state.body.linear_velocity) / h;
  next.time = state.time + h;
  return next;
}

VehicleState VehicleModel::KinematicStep(const VehicleState& state,
                                         const DriveCommand& command,
                                         double dt) const {
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "dt must be positive");
  }
  const VehicleParams& p = params_;
  VehicleState next = state;
  next.throttle = std::clamp(command.throttle, -1.0, 1.0);
  next.brake = std::clamp(command.brake, 0.0, 1.0);
  next.handbrake = command.handbrake;

  const double v = state.speed();
  next.steering = steering_step(state.steering, command.steering, v, p.steering, dt);

  double v_next = v + next.throttle * p.kinematic.max_accel * dt;
  double decel = std::max(next.brake, command.handbrake ? 1.0 : 0.0) *
                 p.kinematic.max_decel;
  if (next.throttle == 0.0) decel += p.kinematic.coast_decel;
  if (std::abs(v_next) <= decel * dt) {
    v_next = 0.0;
  } else {
    v_next -= std::copysign(decel * dt, v_next);
  }

  const double l = p.steering.wheelbase;
  const double beta = std::atan(rear_offset_ * std::tan(next.steering) / l);
  const double yaw_rate = v_next * std::cos(beta) * std::tan(next.steering) / l;
  const double yaw = state.yaw() + yaw_rate * dt;
  const double heading = yaw + beta;
  const Vec3 velocity(v_next * std::cos(heading), v_next * std::sin(heading), 0.0);
  next.body.pose = SE3::FromYaw(
      yaw, state.body.pose.translation() + velocity * dt);
  next.body.linear_velocity = velocity;
  next.body.angular_velocity = Vec3(0.0, 0.0, yaw_rate);
  next.acceleration =
      next.body.pose.rotation().transpose() *
      (velocity - state.body.linear_velocity) / dt;

  const std::array<double, 4> steer = WheelSteerAngles(next.steering, p.steering);
  for (int i = 0; i < 4; ++i) {
    WheelState& w = next.wheels[i];
    w.steer = steer[i];
    w.spin = v_next / p.powertrain.wheel_radius;
    w.revolutions += w.spin * dt / (2.0 * std::numbers::pi);
  }
  next.time = state.time + dt;
  return next;
}

VehicleState vehicle_step(const VehicleState& state,
                          const DriveCommand& command, const World& world,
                          const VehicleParams& params, double dt) {
  return VehicleModel(params).Step(state, command, world, dt);
}

double KineticEnergy(const VehicleState& state, const MassProperties& mass) {
  const Vec3& v = state.body.linear_velocity;
  const Vec3& w = state.body.angular_velocity;
  return 0.5 * mass.mass * v.squaredNorm() +
         0.5 * w.dot(mass.inertia.cwiseProduct(w));
}

}  // namespace twinforge
