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

#ifndef TWINFORGE_BRIDGE_CONTROL_HPP_
#define TWINFORGE_BRIDGE_CONTROL_HPP_

#include <cstdint>
#include <mutex>
#include <optional>

#include "twinforge/vehicle/vehicle_model.hpp"

namespace twinforge::bridge {

using ConnectionId = std::uint64_t;

// At most one holder. Granted first-come; released explicitly, on close, or
// after `timeout` seconds without traffic from the holder (0 disables).
class AuthorityManager {
 public:
  explicit AuthorityManager(double timeout = 0.0) : timeout_(timeout) {}

  bool Request(ConnectionId id, double now);
  void Release(ConnectionId id);
  void Touch(ConnectionId id, double now);
  bool Holds(ConnectionId id, double now);
  std::optional<ConnectionId> holder(double now);

 private:
  void ExpireLocked(double now);

  std::mutex mu_;
  double timeout_;
  std::optional<ConnectionId> holder_;
  double last_heard_ = 0.0;
};

// Single-consumer latest-wins command slot. Once a command arrives the
// sender is engaged: silence (no command or ping) longer than `heartbeat`
// seconds makes Take() return the all-zero command. Closing the sender's
// connection drops its command immediately.
class CommandMailbox {
 public:
  explicit CommandMailbox(double heartbeat = 0.5) : heartbeat_(heartbeat) {}

  void Post(ConnectionId id, const DriveCommand& command, double now);
  void Heard(ConnectionId id, double now);
  void Close(ConnectionId id);
  DriveCommand Take(double now);
  bool expired(double now);

 private:
  std::mutex mu_;
  double heartbeat_;
  std::optional<ConnectionId> sender_;
  DriveCommand latest_;
  double last_heard_ = 0.0;
};

}  // namespace twinforge::bridge

#endif  // TWINFORGE_BRIDGE_CONTROL_HPP_
