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

#ifndef TWINFORGE_COMMON_LOGGING_HPP_
#define TWINFORGE_COMMON_LOGGING_HPP_

#include <spdlog/spdlog.h>

namespace twinforge {

// Reads TWINFORGE_LOG (trace|debug|info|warn|error|off) and applies it to the
// default spdlog logger. Unset or unknown values leave "warn".
void InitLoggingFromEnv();

}  // namespace twinforge

#endif  // TWINFORGE_COMMON_LOGGING_HPP_
