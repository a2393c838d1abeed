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

#ifndef TWINFORGE_SIMCLI_ARTIFACTS_HPP_
#define TWINFORGE_SIMCLI_ARTIFACTS_HPP_

#include <filesystem>
#include <fstream>
#include <string>

namespace twinforge {

// Writes to "<path>.tmp" and renames over `path` on Commit(). Destroying an
// uncommitted file removes the temporary, so `path` is either untouched or
// complete.
class AtomicFile {
 public:
  explicit AtomicFile(std::filesystem::path path, bool binary = false);
  ~AtomicFile();
  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;

  std::ofstream& stream() { return out_; }
  const std::filesystem::path& path() const { return path_; }
  void Commit();

 private:
  std::filesystem::path path_;
  std::filesystem::path temp_;
  std::ofstream out_;
  bool committed_ = false;
};

// Shortest round-trip-exact decimal form: 17 significant digits.
std::string FormatDouble(double value);
// 9 significant digits: exact for a float.
std::string FormatFloat(float value);

// Lowercase hex SHA-256 of a file's bytes or of a string.
std::string Sha256File(const std::filesystem::path& path);
std::string Sha256Hex(const std::string& bytes);

}  // namespace twinforge

#endif  // TWINFORGE_SIMCLI_ARTIFACTS_HPP_
