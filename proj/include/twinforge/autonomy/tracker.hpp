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

#ifndef TWINFORGE_AUTONOMY_TRACKER_HPP_
#define TWINFORGE_AUTONOMY_TRACKER_HPP_

#include <cstddef>
#include <optional>
#include <string_view>

#include "twinforge/autonomy/trajectory.hpp"
#include "twinforge/vehicle/vehicle_model.hpp"

namespace twinforge {

enum class TrackerStatus { kTracking, kTerminated };

std::string_view StatusName(TrackerStatus status);

struct PidGains {
  double kp = 1.0;
  double ki = 0.2;
  double kd = 0.0;
  double integral_limit = 1.0;  // |integral of e| cap, m
};

// 0 <= target < waypoint count while tracking.
struct TrackerState {
  std::size_t target = 0;
  double lookahead = 1.0;  // L_d, m
  PidGains gains;
  double integral = 0.0;
  double previous_error = 0.0;
  bool has_previous = false;
  double termination_tolerance = 0.5;  // d_term, m
  TrackerStatus status = TrackerStatus::kTracking;
  int laps = 0;
};

// Advances the target past every waypoint inside the lookahead circle.
// Looping trajectories wrap from the last waypoint to 0; otherwise reaching
// d_term of the last waypoint terminates (nullopt, and stays terminated).
std::optional<std::size_t> select_target(const Pose2D& pose,
                                         const Trajectory& traj,
                                         TrackerState& state);

// Point the controller steers at: where the lookahead circle leaves the
// segment ending at the target waypoint, or the target itself.
Vec2 LookaheadPoint(const Pose2D& pose, const Trajectory& traj,
                    const TrackerState& state);

// kappa = 2 y_t / L_d^2, delta = atan(kappa l) clamped to +-max_steer.
// Zero once terminated.
double pure_pursuit_step(const Pose2D& pose, double speed,
                         const Trajectory& traj, const TrackerState& state,
                         double wheelbase, double max_steer);

struct LongitudinalCommand {
  double throttle = 0.0;
  double brake = 0.0;
};

// Never both nonzero.
LongitudinalCommand pid_speed_step(double speed, double reference,
                                   TrackerState& state, double dt);

struct TrackerConfig {
  double lookahead = 1.0;
  PidGains gains;
  double termination_tolerance = 0.5;
  double wheelbase = 0.3;
  double max_steer = 0.5;
  double approach_decel = 1.0;  // m/s^2, speed cap toward a final stop
  double min_speed = 0.2;       // m/s, floor on v_ref while tracking
};

struct TrackerOutput {
  DriveCommand command;
  TrackerStatus status = TrackerStatus::kTracking;
  std::size_t target = 0;
  double reference_speed = 0.0;
};

// Target selection, pure pursuit and PID in the order the loop needs them.
class PathTracker {
 public:
  PathTracker(Trajectory trajectory, TrackerConfig config);

  TrackerOutput Step(const Pose2D& pose, double speed, double dt);

  const Trajectory& trajectory() const { return traj_; }
  const TrackerState& state() const { return state_; }
  const TrackerConfig& config() const { return config_; }

  double ReferenceSpeed(const Pose2D& pose) const;

 private:
  Trajectory traj_;
  TrackerConfig config_;
  TrackerState state_;
};

// Planar distance to the trajectory polyline (closing segment included for
// looping trajectories).
double CrossTrackError(const Pose2D& pose, const Trajectory& traj);

}  // namespace twinforge

#endif  // TWINFORGE_AUTONOMY_TRACKER_HPP_
