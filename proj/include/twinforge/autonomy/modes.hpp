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

#ifndef TWINFORGE_AUTONOMY_MODES_HPP_
#define TWINFORGE_AUTONOMY_MODES_HPP_

#include <optional>
#include <string_view>

namespace twinforge {

enum class OperationalMode { kGym, kHighFidelitySim, kTestbed, kDigitalTwin };

// CLI spellings: gym, sim, testbed, twin.
std::string_view ModeName(OperationalMode mode);
std::optional<OperationalMode> ParseMode(std::string_view text);

enum class Plant { kKinematic, kDynamic, kNone };

struct Routing {
  Plant plant = Plant::kDynamic;
  bool commands_to_sim = true;
  bool commands_to_bridge = false;
  bool state_from_bridge = false;

  friend bool operator==(const Routing&, const Routing&) = default;
};

Routing set_mode(OperationalMode mode);

// Exactly one mode is active; switching is refused while tracking.
class ModeController {
 public:
  explicit ModeController(OperationalMode mode = OperationalMode::kHighFidelitySim)
      : mode_(mode), routing_(set_mode(mode)) {}

  OperationalMode mode() const { return mode_; }
  const Routing& routing() const { return routing_; }

  void SetTracking(bool active) { tracking_ = active; }
  bool tracking() const { return tracking_; }

  // Throws kFailedPrecondition "stop tracking before mode change".
  const Routing& SetMode(OperationalMode mode);

 private:
  OperationalMode mode_;
  Routing routing_;
  bool tracking_ = false;
};

}  // namespace twinforge

#endif  // TWINFORGE_AUTONOMY_MODES_HPP_
