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

#ifndef TWINFORGE_BRIDGE_SERVER_HPP_
#define TWINFORGE_BRIDGE_SERVER_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twinforge/autonomy/modes.hpp"
#include "twinforge/autonomy/occupancy_grid.hpp"
#include "twinforge/bridge/control.hpp"
#include "twinforge/bridge/mirror.hpp"
#include "twinforge/bridge/protocol.hpp"
#include "twinforge/vehicle/vehicle_model.hpp"

namespace twinforge::bridge {

// Immutable view of the simulation published once per step. The class
// grid is shared between snapshots until the map changes.
struct Snapshot {
  double sim_time = 0.0;
  Pose2D pose;
  double speed = 0.0;
  std::string gear = "N";
  std::vector<double> scan;  // already decimated
  std::shared_ptr<const std::vector<CellClass>> classes;
  int grid_width = 0;
  int grid_height = 0;
  CellRect dirty;  // cells changed since the previous snapshot
  std::string tracker = "idle";
  std::string mode = "sim";
  bool recording = false;
  std::size_t waypoints = 0;
  bool external_link = false;
  bool degraded = false;
};

struct ServerConfig {
  std::string address = "127.0.0.1";
  std::uint16_t port = 0;           // 0 picks a free port
  double authority_timeout = 0.0;   // s; 0 never expires
  double heartbeat = 0.5;           // s
  double stream_rate = 20.0;        // Hz
  double throttle_min = -1.0;       // -1 small scale, 0 full scale
  double steering_limit = 0.5;      // rad per unit of normalized steering
};

// Record or mode change asked for by the connection holding authority.
struct ControlRequest {
  ConnectionId connection = 0;
  RecordRequest record = RecordRequest::kNone;
  std::optional<OperationalMode> mode;
};

// WebSocket service at ws://address:port/sim. All network I/O runs on one
// internal thread; the simulation thread talks to it only through
// Publish() and the Take*() mailboxes.
class BridgeServer {
 public:
  explicit BridgeServer(ServerConfig config);
  ~BridgeServer();
  BridgeServer(const BridgeServer&) = delete;
  BridgeServer& operator=(const BridgeServer&) = delete;

  // Throws Error kUnavailable when the endpoint cannot be bound.
  void Start();
  void Stop();
  std::uint16_t port() const;

  // Seconds on the server clock, shared by heartbeat and authority timing.
  double Now() const;

  void Publish(std::shared_ptr<const Snapshot> snapshot);
  // Latest command from the authority holder; all-zero once its heartbeat
  // lapses or it disconnects.
  DriveCommand TakeCommand();
  std::vector<ControlRequest> TakeRequests();
  void SendError(ConnectionId connection, const std::string& reason);

  std::size_t connections() const;
  // Link to the connection that said hello as role "vehicle".
  ExternalTarget& vehicle_link();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace twinforge::bridge

#endif  // TWINFORGE_BRIDGE_SERVER_HPP_
