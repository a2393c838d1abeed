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

#include "twinforge/bridge/mirror.hpp"

#include "twinforge/bridge/protocol.hpp"

namespace twinforge::bridge {

std::string CommandPayload(std::int64_t step, const DriveCommand& command,
                           double steering_limit) {
  CommandMessage m;
  m.seq = step;
  m.throttle = command.throttle;
  m.steering = steering_limit > 0.0 ? command.steering / steering_limit : 0.0;
  m.brake = command.brake;
  m.handbrake = command.handbrake;
  return Serialize(m);
}

const std::string& CommandMirror::Mirror(std::int64_t step, double stamp,
                                         const DriveCommand& command) {
  DeliveryRecord record{step, CommandPayload(step, command, steering_limit_), stamp, std::nullopt};
  if (external_ != nullptr && external_->Alive()) {
    record.external_stamp = external_->Deliver(record.payload, stamp);
  }
  degraded_ = !record.external_stamp;
  if (record.external_stamp) bridge_log_.push_back(record);
  sim_log_.push_back(std::move(record));
  return sim_log_.back().payload;
}

}  // namespace twinforge::bridge
