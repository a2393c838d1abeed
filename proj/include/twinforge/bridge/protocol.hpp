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

#ifndef TWINFORGE_BRIDGE_PROTOCOL_HPP_
#define TWINFORGE_BRIDGE_PROTOCOL_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "twinforge/autonomy/modes.hpp"
#include "twinforge/autonomy/occupancy_grid.hpp"
#include "twinforge/vehicle/vehicle_model.hpp"

namespace twinforge::bridge {

// Rejected client frame; what() is the reason sent back in the error frame.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RecordRequest { kNone, kStart, kStop };
enum class Role { kTeleop, kVehicle };
enum class AuthorityAction { kRequest, kRelease };

struct CommandMessage {
  std::int64_t seq = 0;
  double throttle = 0.0;  // [-1, 1] small-scale, [0, 1] full-scale
  double steering = 0.0;  // [-1, 1] of the steering limit, positive left
  double brake = 0.0;     // [0, 1]
  bool handbrake = false;
  RecordRequest record = RecordRequest::kNone;
  std::optional<OperationalMode> mode;
  friend bool operator==(const CommandMessage&, const CommandMessage&) = default;
};

struct PingMessage {
  std::int64_t seq = 0;
  friend bool operator==(const PingMessage&, const PingMessage&) = default;
};

struct HelloMessage {
  Role role = Role::kTeleop;
  friend bool operator==(const HelloMessage&, const HelloMessage&) = default;
};

struct AuthorityMessage {
  AuthorityAction action = AuthorityAction::kRequest;
  friend bool operator==(const AuthorityMessage&, const AuthorityMessage&) = default;
};

// Asks for the whole grid in the next state frame.
struct SnapshotRequest {
  friend bool operator==(const SnapshotRequest&, const SnapshotRequest&) = default;
};

using ClientMessage = std::variant<CommandMessage, PingMessage, HelloMessage,
                                   AuthorityMessage, SnapshotRequest>;

// `throttle_min` is -1 for small-scale vehicles and 0 for full-scale ones.
// Throws ProtocolError on malformed JSON, unknown types or out-of-range
// values.
ClientMessage ParseClientMessage(std::string_view text, double throttle_min = -1.0);

std::string Serialize(const CommandMessage& m);
std::string Serialize(const PingMessage& m);
std::string Serialize(const HelloMessage& m);
std::string Serialize(const AuthorityMessage& m);
std::string Serialize(const SnapshotRequest& m);
std::string Serialize(const ClientMessage& m);

// Steering is scaled by the limit; throttle, brake and handbrake pass through.
DriveCommand ToDriveCommand(const CommandMessage& m, double steering_limit);

// Cell classes over an inclusive-exclusive window, row-major from (x0, y0).
struct GridPatch {
  int x0 = 0;
  int y0 = 0;
  int w = 0;
  int h = 0;
  std::vector<std::uint8_t> cells;  // CellClass values: 0 unknown, 1 free, 2 occupied
  friend bool operator==(const GridPatch&, const GridPatch&) = default;
};

GridPatch ExtractPatch(const std::vector<CellClass>& classes, int grid_width,
                       const CellRect& rect);

struct StateMessage {
  std::int64_t seq = 0;
  double sim_time = 0.0;
  Pose2D pose;
  double speed = 0.0;
  std::string gear = "N";
  std::vector<double> scan;  // +inf travels as null
  std::optional<GridPatch> grid_patch;
  std::string tracker = "idle";  // idle | tracking | terminated
  std::string mode = "sim";
  bool recording = false;
  std::size_t waypoints = 0;
  bool external_link = false;  // digital-twin peer reachable
  bool degraded = false;       // twin mode running sim-only
  bool authority = false;      // this connection holds teleop authority
};

std::string Serialize(const StateMessage& m);
StateMessage ParseStateMessage(std::string_view text);

std::string SerializeError(std::string_view reason);
std::string SerializeAuthority(bool granted, bool held_by_other);

inline constexpr std::size_t kMaxStreamedRays = 180;

// Uniform decimation: every ceil(n / max_rays)-th ray starting at 0.
std::vector<double> DecimateScan(const std::vector<double>& ranges,
                                 std::size_t max_rays = kMaxStreamedRays);

}  // namespace twinforge::bridge

#endif  // TWINFORGE_BRIDGE_PROTOCOL_HPP_
