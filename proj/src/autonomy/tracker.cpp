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

#include "twinforge/autonomy/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "twinforge/common/error.hpp"

namespace twinforge {
namespace {

double Distance(const Pose2D& pose, const Waypoint& wp) {
  return std::hypot(wp.x - pose.x, wp.y - pose.y);
}

Vec2 Point(const Waypoint& wp) { return {wp.x, wp.y}; }

double SegmentDistance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  const double s = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (a + s * ab - p).norm();
}

}  // namespace

std::string_view StatusName(TrackerStatus status) {
  return status == TrackerStatus::kTracking ? "tracking" : "terminated";
}

std::optional<std::size_t> select_target(const Pose2D& pose,
                                         const Trajectory& traj,
                                         TrackerState& state) {
  const std::size_t n = traj.waypoints.size();
  if (n == 0) throw Error(ErrorCode::kFailedPrecondition, "empty trajectory");
  if (state.status == TrackerStatus::kTerminated) return std::nullopt;
  state.target = std::min(state.target, n - 1);

  for (std::size_t iter = 0; iter <= n; ++iter) {
    const double d = Distance(pose, traj.waypoints[state.target]);
    if (state.target + 1 < n) {
      if (d >= state.lookahead) break;
      ++state.target;
      continue;
    }
    if (traj.loop) {
      if (d >= state.lookahead) break;
      state.target = 0;
      ++state.laps;
      continue;
    }
    if (d <= state.termination_tolerance) {
      state.status = TrackerStatus::kTerminated;
      state.integral = 0.0;
      state.has_previous = false;
      return std::nullopt;
    }
    break;
  }
  return state.target;
}

Vec2 LookaheadPoint(const Pose2D& pose, const Trajectory& traj,
                    const TrackerState& state) {
  const std::size_t n = traj.waypoints.size();
  const Vec2 target = Point(traj.waypoints[state.target]);
  const Vec2 c(pose.x, pose.y);
  const double ld = state.lookahead;
  if ((target - c).norm() <= ld) return target;

  std::optional<std::size_t> prev;
  if (state.target > 0) {
    prev = state.target - 1;
  } else if (traj.loop && state.laps > 0 && n > 1) {
    prev = n - 1;
  }
  if (!prev) return target;

  // |a + s (target - a) - c| = L_d, largest root in [0, 1].
  const Vec2 a = Point(traj.waypoints[*prev]);
  const Vec2 d = target - a;
  const Vec2 f = a - c;
  const double qa = d.squaredNorm();
  if (qa == 0.0) return target;
  const double qb = 2.0 * f.dot(d);
  const double qc = f.squaredNorm() - ld * ld;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) return target;
  const double s = (-qb + std::sqrt(disc)) / (2.0 * qa);
  if (s < 0.0 || s > 1.0) return target;
  return a + s * d;
}

double pure_pursuit_step(const Pose2D& pose, double /*speed*/,
                         const Trajectory& traj, const TrackerState& state,
                         double wheelbase, double max_steer) {
  if (state.status == TrackerStatus::kTerminated) return 0.0;
  if (!(state.lookahead > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "lookahead must be positive");
  }
  const Vec2 p = LookaheadPoint(pose, traj, state);
  const double dx = p.x() - pose.x;
  const double dy = p.y() - pose.y;
  const double y_t = -std::sin(pose.yaw) * dx + std::cos(pose.yaw) * dy;
  const double kappa = 2.0 * y_t / (state.lookahead * state.lookahead);
  return std::clamp(std::atan(kappa * wheelbase), -max_steer, max_steer);
}

LongitudinalCommand pid_speed_step(double speed, double reference,
                                   TrackerState& state, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::kInvalidArgument, "dt must be positive");
  const PidGains& g = state.gains;
  const double e = reference - speed;
  state.integral = std::clamp(state.integral + e * dt, -g.integral_limit,
                              g.integral_limit);
  const double derivative = state.has_previous ? (e - state.previous_error) / dt : 0.0;
  state.previous_error = e;
  state.has_previous = true;
  const double u = g.kp * e + g.ki * state.integral + g.kd * derivative;
  if (u >= 0.0) return {std::min(u, 1.0), 0.0};
  return {0.0, std::min(-u, 1.0)};
}

PathTracker::PathTracker(Trajectory trajectory, TrackerConfig config)
    : traj_(std::move(trajectory)), config_(config) {
  if (traj_.waypoints.empty()) {
    throw Error(ErrorCode::kFailedPrecondition, "empty trajectory");
  }
  if (!(config_.lookahead > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "lookahead must be positive");
  }
  state_.lookahead = config_.lookahead;
  state_.gains = config_.gains;
  state_.termination_tolerance = config_.termination_tolerance;
}

double PathTracker::ReferenceSpeed(const Pose2D& pose) const {
  if (state_.status == TrackerStatus::kTerminated) return 0.0;
  const Waypoint& wp = traj_.waypoints[state_.target];
  double v = std::max(wp.speed, config_.min_speed);
  if (!traj_.loop && state_.target + 1 == traj_.waypoints.size()) {
    v = std::min(v, std::sqrt(2.0 * config_.approach_decel * Distance(pose, wp)));
  }
  return v;
}

TrackerOutput PathTracker::Step(const Pose2D& pose, double speed, double dt) {
  select_target(pose, traj_, state_);
  TrackerOutput out;
  out.status = state_.status;
  out.target = state_.target;
  out.reference_speed = ReferenceSpeed(pose);
  out.command.steering = pure_pursuit_step(pose, speed, traj_, state_,
                                           config_.wheelbase, config_.max_steer);
  const LongitudinalCommand lc = pid_speed_step(speed, out.reference_speed, state_, dt);
  out.command.throttle = lc.throttle;
  out.command.brake = lc.brake;
  if (state_.status == TrackerStatus::kTerminated) {
    out.command.throttle = 0.0;
    out.command.brake = std::max(out.command.brake, std::abs(speed) < 0.05 ? 1.0 : 0.0);
  }
  return out;
}

double CrossTrackError(const Pose2D& pose, const Trajectory& traj) {
  const auto& w = traj.waypoints;
  if (w.empty()) return std::numeric_limits<double>::infinity();
  const Vec2 p(pose.x, pose.y);
  if (w.size() == 1) return (Point(w[0]) - p).norm();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    best = std::min(best, SegmentDistance(p, Point(w[i]), Point(w[i + 1])));
  }
  if (traj.loop) best = std::min(best, SegmentDistance(p, Point(w.back()), Point(w.front())));
  return best;
}

}  // namespace twinforge
