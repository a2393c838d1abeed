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

#include "twinforge/simcli/command_log.hpp"

#include <algorithm>
#include <fstream>
#include <string>

#include "csv_util.hpp"
#include "twinforge/common/error.hpp"
#include "twinforge/simcli/artifacts.hpp"

namespace twinforge {

using internal::LinePrefix;
using internal::ParseNumber;
using internal::SplitFields;
using internal::Trim;

void CommandLog::Append(std::int64_t step, const DriveCommand& command) {
  if (step < 0 || (!rows_.empty() && step <= rows_.back().step)) {
    throw Error(ErrorCode::kInvalidArgument,
                "command log steps must be non-negative and strictly increasing");
  }
  rows_.push_back({step, command});
}

DriveCommand CommandLog::At(std::int64_t step) const {
  const auto it = std::upper_bound(
      rows_.begin(), rows_.end(), step,
      [](std::int64_t s, const CommandRecord& r) { return s < r.step; });
  if (it == rows_.begin()) return {};
  return std::prev(it)->command;
}

void WriteCommandLog(std::ostream& out, const CommandLog& log) {
  out << "step,throttle,steering,brake,handbrake\n";
  for (const CommandRecord& r : log.rows()) {
    out << r.step << ',' << FormatDouble(r.command.throttle) << ','
        << FormatDouble(r.command.steering) << ',' << FormatDouble(r.command.brake)
        << ',' << (r.command.handbrake ? 1 : 0) << '\n';
  }
}

void save_command_log(const CommandLog& log, const std::filesystem::path& path) {
  AtomicFile file(path);
  WriteCommandLog(file.stream(), log);
  file.Commit();
}

CommandLog ParseCommandLog(std::istream& in) {
  CommandLog log;
  std::string raw;
  int line = 0;
  bool header_seen = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = Trim(raw);
    if (text.empty() || text.front() == '#') continue;
    if (!header_seen && text == "step,throttle,steering,brake,handbrake") {
      header_seen = true;
      continue;
    }
    header_seen = true;
    const auto f = SplitFields(text, ',');
    CommandRecord r;
    std::int64_t hand = 0;
    if (f.size() != 5 || !ParseNumber(f[0], r.step) ||
        !ParseNumber(f[1], r.command.throttle) ||
        !ParseNumber(f[2], r.command.steering) ||
        !ParseNumber(f[3], r.command.brake) || !ParseNumber(f[4], hand) ||
        (hand != 0 && hand != 1)) {
      throw Error(ErrorCode::kBadFormat,
                  LinePrefix(line) + "expected step,throttle,steering,brake,handbrake");
    }
    r.command.handbrake = hand == 1;
    try {
      log.Append(r.step, r.command);
    } catch (const Error&) {
      throw Error(ErrorCode::kBadFormat, LinePrefix(line) + "step indices must strictly increase");
    }
  }
  return log;
}

CommandLog load_command_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open command log " + path.string());
  return ParseCommandLog(in);
}

}  // namespace twinforge
