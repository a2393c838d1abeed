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

#ifndef TWINFORGE_COMMON_ERROR_HPP_
#define TWINFORGE_COMMON_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace twinforge {

enum class ErrorCode {
  kInvalidArgument,
  kNotFound,
  kBadFormat,
  kDiverged,
  kFailedPrecondition,
  kUnavailable,
};

// All library failures surface as this exception. The message is the short
// human-readable reason ("no sprung masses", "bad map file", ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace twinforge

#endif  // TWINFORGE_COMMON_ERROR_HPP_
