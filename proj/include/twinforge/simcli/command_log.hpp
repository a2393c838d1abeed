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

#ifndef TWINFORGE_SIMCLI_COMMAND_LOG_HPP_
#define TWINFORGE_SIMCLI_COMMAND_LOG_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "twinforge/vehicle/vehicle_model.hpp"

namespace twinforge {

struct CommandRecord {
  std::int64_t step = 0;
  DriveCommand command;
  friend bool operator==(const CommandRecord&, const CommandRecord&) = default;
};

// Step indices strictly increase.
class CommandLog {
 public:
  const std::vector<CommandRecord>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }

  // Throws kInvalidArgument unless step exceeds the last step.
  void Append(std::int64_t step, const DriveCommand& command);

  // Command in force at `step`: the latest row at or before it, else zero.
  DriveCommand At(std::int64_t step) const;

 private:
  std::vector<CommandRecord> rows_;
};

// CSV: header "step,throttle,steering,brake,handbrake".
void WriteCommandLog(std::ostream& out, const CommandLog& log);
void save_command_log(const CommandLog& log, const std::filesystem::path& path);
CommandLog ParseCommandLog(std::istream& in);
CommandLog load_command_log(const std::filesystem::path& path);

}  // namespace twinforge

#endif  // TWINFORGE_SIMCLI_COMMAND_LOG_HPP_
