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

#include "twinforge/bridge/control.hpp"

namespace twinforge::bridge {

void AuthorityManager::ExpireLocked(double now) {
  if (holder_ && timeout_ > 0.0 && now - last_heard_ > timeout_) holder_.reset();
}

bool AuthorityManager::Request(ConnectionId id, double now) {
  std::lock_guard lock(mu_);
  ExpireLocked(now);
  if (holder_ && *holder_ != id) return false;
  holder_ = id;
  last_heard_ = now;
  return true;
}

void AuthorityManager::Release(ConnectionId id) {
  std::lock_guard lock(mu_);
  if (holder_ == id) holder_.reset();
}

void AuthorityManager::Touch(ConnectionId id, double now) {
  std::lock_guard lock(mu_);
  if (holder_ == id) last_heard_ = now;
}

bool AuthorityManager::Holds(ConnectionId id, double now) {
  std::lock_guard lock(mu_);
  ExpireLocked(now);
  return holder_ == id;
}

std::optional<ConnectionId> AuthorityManager::holder(double now) {
  std::lock_guard lock(mu_);
  ExpireLocked(now);
  return holder_;
}

void CommandMailbox::Post(ConnectionId id, const DriveCommand& command, double now) {
  std::lock_guard lock(mu_);
  sender_ = id;
  latest_ = command;
  last_heard_ = now;
}

void CommandMailbox::Heard(ConnectionId id, double now) {
  std::lock_guard lock(mu_);
  if (sender_ == id) last_heard_ = now;
}

void CommandMailbox::Close(ConnectionId id) {
  std::lock_guard lock(mu_);
  if (sender_ == id) {
    sender_.reset();
    latest_ = DriveCommand{};
  }
}

DriveCommand CommandMailbox::Take(double now) {
  std::lock_guard lock(mu_);
  if (!sender_) return {};
  if (now - last_heard_ > heartbeat_) return {};
  return latest_;
}

bool CommandMailbox::expired(double now) {
  std::lock_guard lock(mu_);
  return sender_.has_value() && now - last_heard_ > heartbeat_;
}

}  // namespace twinforge::bridge
