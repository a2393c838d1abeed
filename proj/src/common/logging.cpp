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

#include "twinforge/common/logging.hpp"

#include <cstdlib>
#include <string>

namespace twinforge {

void InitLoggingFromEnv() {
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv("TWINFORGE_LOG")) {
    const auto parsed = spdlog::level::from_str(env);
    // from_str maps unknown strings to "off"; only accept an explicit "off".
    if (parsed != spdlog::level::off || std::string(env) == "off") {
      level = parsed;
    }
  }
  spdlog::set_level(level);
}

}  // namespace twinforge
