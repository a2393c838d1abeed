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

#ifndef TWINFORGE_BRIDGE_MIRROR_HPP_
#define TWINFORGE_BRIDGE_MIRROR_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twinforge/autonomy/occupancy_grid.hpp"
#include "twinforge/vehicle/vehicle_model.hpp"

namespace twinforge::bridge {

// Planar state reported by a physical (or stand-in) vehicle.
struct ExternalState {
  Pose2D pose;
  double speed = 0.0;
  double stamp = 0.0;
};

// The non-simulated side of a testbed or digital-twin link.
class ExternalTarget {
 public:
  virtual ~ExternalTarget() = default;
  // The peer's receipt stamp, or empty when it is unreachable and the
  // payload was dropped.
  virtual std::optional<double> Deliver(const std::string& payload, double stamp) = 0;
  virtual bool Alive() const = 0;
  virtual std::optional<ExternalState> LatestState() const { return std::nullopt; }
};

struct DeliveryRecord {
  std::int64_t step = 0;
  std::string payload;
  double sim_stamp = 0.0;
  std::optional<double> external_stamp;  // empty when not delivered
};

// Serialized command frame shared by both targets; steering is normalized
// by the limit as on the wire.
std::string CommandPayload(std::int64_t step, const DriveCommand& command,
                           double steering_limit);

// Sends every command to the simulator and, when reachable, the external
// target with a byte-identical payload. An unreachable target degrades to
// sim-only and raises degraded() until a delivery succeeds again.
class CommandMirror {
 public:
  CommandMirror(ExternalTarget* external, double steering_limit)
      : external_(external), steering_limit_(steering_limit) {}

  // Returns the payload delivered to the simulator.
  const std::string& Mirror(std::int64_t step, double stamp, const DriveCommand& command);

  bool degraded() const { return degraded_; }
  const std::vector<DeliveryRecord>& sim_log() const { return sim_log_; }
  const std::vector<DeliveryRecord>& bridge_log() const { return bridge_log_; }

 private:
  ExternalTarget* external_;
  double steering_limit_;
  bool degraded_ = false;
  std::vector<DeliveryRecord> sim_log_;
  std::vector<DeliveryRecord> bridge_log_;
};

}  // namespace twinforge::bridge

#endif  // TWINFORGE_BRIDGE_MIRROR_HPP_
