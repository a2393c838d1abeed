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

#include "twinforge/autonomy/modes.hpp"

#include "twinforge/common/error.hpp"

namespace twinforge {

std::string_view ModeName(OperationalMode mode) {
  switch (mode) {
    case OperationalMode::kGym:
      return "gym";
    case OperationalMode::kHighFidelitySim:
      return "sim";
    case OperationalMode::kTestbed:
      return "testbed";
    case OperationalMode::kDigitalTwin:
      return "twin";
  }
  return "sim";
}

std::optional<OperationalMode> ParseMode(std::string_view text) {
  if (text == "gym") return OperationalMode::kGym;
  if (text == "sim" || text == "high-fidelity-sim") return OperationalMode::kHighFidelitySim;
  if (text == "testbed") return OperationalMode::kTestbed;
  if (text == "twin" || text == "digital-twin") return OperationalMode::kDigitalTwin;
  return std::nullopt;
}

Routing set_mode(OperationalMode mode) {
  switch (mode) {
    case OperationalMode::kGym:
      return {Plant::kKinematic, true, false, false};
    case OperationalMode::kHighFidelitySim:
      return {Plant::kDynamic, true, false, false};
    case OperationalMode::kTestbed:
      return {Plant::kNone, false, true, true};
    case OperationalMode::kDigitalTwin:
      return {Plant::kDynamic, true, true, false};
  }
  return {};
}

const Routing& ModeController::SetMode(OperationalMode mode) {
  if (tracking_ && mode != mode_) {
    throw Error(ErrorCode::kFailedPrecondition, "stop tracking before mode change");
  }
  mode_ = mode;
  routing_ = set_mode(mode);
  return routing_;
}

}  // namespace twinforge
