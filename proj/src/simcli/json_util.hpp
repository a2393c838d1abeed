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

#ifndef TWINFORGE_SRC_SIMCLI_JSON_UTIL_HPP_
#define TWINFORGE_SRC_SIMCLI_JSON_UTIL_HPP_

#include <string>

#include <nlohmann/json.hpp>

#include "twinforge/common/error.hpp"

namespace twinforge::internal {

using Json = nlohmann::json;

template <typename T>
T Get(const Json& j, const char* key, const T& fallback,
      const std::string& context) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  try {
    return it->template get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::kBadFormat, context + ": bad value for '" + key + "'");
  }
}

template <typename T>
T Require(const Json& j, const char* key, const std::string& context) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    throw Error(ErrorCode::kBadFormat, context + ": missing '" + std::string(key) + "'");
  }
  try {
    return it->template get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::kBadFormat, context + ": bad value for '" + key + "'");
  }
}

inline const Json& Section(const Json& j, const char* key) {
  static const Json kEmpty = Json::object();
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return kEmpty;
  if (!it->is_object()) {
    throw Error(ErrorCode::kBadFormat, std::string("'") + key + "' must be an object");
  }
  return *it;
}

inline Json ParseJson(const std::string& text, const std::string& context) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kBadFormat, context + ": " + e.what());
  }
}

}  // namespace twinforge::internal

#endif  // TWINFORGE_SRC_SIMCLI_JSON_UTIL_HPP_
