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

#include "twinforge/bridge/protocol.hpp"

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

namespace twinforge::bridge {
namespace {

using Json = nlohmann::json;

[[noreturn]] void Reject(const std::string& reason) { throw ProtocolError(reason); }

double Number(const Json& j, const char* key, std::optional<double> fallback) {
  const auto it = j.find(key);
  if (it == j.end()) {
    if (fallback) return *fallback;
    Reject(std::string("missing field '") + key + "'");
  }
  if (!it->is_number()) Reject(std::string("field '") + key + "' must be a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) Reject(std::string("field '") + key + "' must be finite");
  return v;
}

std::int64_t Seq(const Json& j) {
  const auto it = j.find("seq");
  if (it == j.end()) Reject("missing field 'seq'");
  if (!it->is_number_integer()) Reject("field 'seq' must be an integer");
  const auto v = it->get<std::int64_t>();
  if (v < 0) Reject("field 'seq' must be non-negative");
  return v;
}

void CheckRange(double v, double lo, double hi, const char* key) {
  if (v < lo || v > hi) Reject(std::string(key) + " out of range");
}

std::string_view RecordName(RecordRequest r) {
  switch (r) {
    case RecordRequest::kStart:
      return "start";
    case RecordRequest::kStop:
      return "stop";
    case RecordRequest::kNone:
      break;
  }
  return "none";
}

CommandMessage ParseCommand(const Json& j, double throttle_min) {
  CommandMessage m;
  m.seq = Seq(j);
  m.throttle = Number(j, "throttle", std::nullopt);
  m.steering = Number(j, "steering", std::nullopt);
  m.brake = Number(j, "brake", 0.0);
  CheckRange(m.throttle, throttle_min, 1.0, "throttle");
  CheckRange(m.steering, -1.0, 1.0, "steering");
  CheckRange(m.brake, 0.0, 1.0, "brake");
  if (const auto it = j.find("handbrake"); it != j.end()) {
    if (!it->is_boolean()) Reject("field 'handbrake' must be a boolean");
    m.handbrake = it->get<bool>();
  }
  if (const auto it = j.find("record"); it != j.end()) {
    if (!it->is_string()) Reject("field 'record' must be a string");
    const auto s = it->get<std::string>();
    if (s == "start") {
      m.record = RecordRequest::kStart;
    } else if (s == "stop") {
      m.record = RecordRequest::kStop;
    } else if (s != "none") {
      Reject("record must be start, stop or none");
    }
  }
  if (const auto it = j.find("mode"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) Reject("field 'mode' must be a string");
    m.mode = ParseMode(it->get<std::string>());
    if (!m.mode) Reject("unknown mode");
  }
  return m;
}

}  // namespace

ClientMessage ParseClientMessage(std::string_view text, double throttle_min) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error&) {
    Reject("malformed json");
  }
  if (!j.is_object()) Reject("message must be an object");
  const auto type = j.find("type");
  if (type == j.end() || !type->is_string()) Reject("missing field 'type'");
  const auto t = type->get<std::string>();
  if (t == "command") return ParseCommand(j, throttle_min);
  if (t == "ping") return PingMessage{Seq(j)};
  if (t == "hello") {
    const auto it = j.find("role");
    if (it == j.end() || !it->is_string()) Reject("missing field 'role'");
    const auto role = it->get<std::string>();
    if (role == "teleop") return HelloMessage{Role::kTeleop};
    if (role == "vehicle") return HelloMessage{Role::kVehicle};
    Reject("role must be teleop or vehicle");
  }
  if (t == "authority") {
    const auto it = j.find("action");
    if (it == j.end() || !it->is_string()) Reject("missing field 'action'");
    const auto action = it->get<std::string>();
    if (action == "request") return AuthorityMessage{AuthorityAction::kRequest};
    if (action == "release") return AuthorityMessage{AuthorityAction::kRelease};
    Reject("action must be request or release");
  }
  if (t == "snapshot") return SnapshotRequest{};
  Reject("unknown message type '" + t + "'");
}

std::string Serialize(const CommandMessage& m) {
  Json j = {{"type", "command"},     {"seq", m.seq},
            {"throttle", m.throttle}, {"steering", m.steering},
            {"brake", m.brake},       {"handbrake", m.handbrake},
            {"record", RecordName(m.record)}};
  j["mode"] = m.mode ? Json(std::string(ModeName(*m.mode))) : Json(nullptr);
  return j.dump();
}

std::string Serialize(const PingMessage& m) {
  return Json{{"type", "ping"}, {"seq", m.seq}}.dump();
}

std::string Serialize(const HelloMessage& m) {
  return Json{{"type", "hello"}, {"role", m.role == Role::kTeleop ? "teleop" : "vehicle"}}.dump();
}

std::string Serialize(const AuthorityMessage& m) {
  return Json{{"type", "authority"},
              {"action", m.action == AuthorityAction::kRequest ? "request" : "release"}}
      .dump();
}

std::string Serialize(const SnapshotRequest&) {
  return Json{{"type", "snapshot"}}.dump();
}

std::string Serialize(const ClientMessage& m) {
  return std::visit([](const auto& v) { return Serialize(v); }, m);
}

DriveCommand ToDriveCommand(const CommandMessage& m, double steering_limit) {
  DriveCommand c;
  c.throttle = m.throttle;
  c.steering = m.steering * steering_limit;
  c.brake = m.brake;
  c.handbrake = m.handbrake;
  return c;
}

GridPatch ExtractPatch(const std::vector<CellClass>& classes, int grid_width,
                       const CellRect& rect) {
  GridPatch p;
  if (rect.empty()) return p;
  p.x0 = rect.x0;
  p.y0 = rect.y0;
  p.w = rect.width();
  p.h = rect.height();
  p.cells.reserve(static_cast<std::size_t>(p.w) * static_cast<std::size_t>(p.h));
  for (int y = rect.y0; y <= rect.y1; ++y) {
    for (int x = rect.x0; x <= rect.x1; ++x) {
      p.cells.push_back(static_cast<std::uint8_t>(
          classes[static_cast<std::size_t>(y) * static_cast<std::size_t>(grid_width) +
                  static_cast<std::size_t>(x)]));
    }
  }
  return p;
}

std::string Serialize(const StateMessage& m) {
  Json scan = Json::array();
  for (const double r : m.scan) scan.push_back(std::isfinite(r) ? Json(r) : Json(nullptr));
  Json j = {{"type", "state"},
            {"seq", m.seq},
            {"sim_time", m.sim_time},
            {"pose", {{"x", m.pose.x}, {"y", m.pose.y}, {"yaw", m.pose.yaw}}},
            {"speed", m.speed},
            {"gear", m.gear},
            {"scan", std::move(scan)},
            {"tracker", m.tracker},
            {"mode", m.mode},
            {"recording", m.recording},
            {"waypoints", m.waypoints},
            {"external_link", m.external_link},
            {"degraded", m.degraded},
            {"authority", m.authority}};
  if (m.grid_patch) {
    const GridPatch& p = *m.grid_patch;
    j["grid_patch"] = {{"x0", p.x0}, {"y0", p.y0}, {"w", p.w}, {"h", p.h}, {"cells", p.cells}};
  } else {
    j["grid_patch"] = nullptr;
  }
  return j.dump();
}

StateMessage ParseStateMessage(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error&) {
    Reject("malformed json");
  }
  try {
    if (j.at("type") != "state") Reject("not a state message");
    StateMessage m;
    m.seq = j.at("seq").get<std::int64_t>();
    m.sim_time = j.at("sim_time").get<double>();
    m.pose = {j.at("pose").at("x").get<double>(), j.at("pose").at("y").get<double>(),
              j.at("pose").at("yaw").get<double>()};
    m.speed = j.at("speed").get<double>();
    m.gear = j.at("gear").get<std::string>();
    for (const auto& r : j.at("scan")) {
      m.scan.push_back(r.is_null() ? std::numeric_limits<double>::infinity() : r.get<double>());
    }
    if (const auto& g = j.at("grid_patch"); !g.is_null()) {
      GridPatch p;
      p.x0 = g.at("x0").get<int>();
      p.y0 = g.at("y0").get<int>();
      p.w = g.at("w").get<int>();
      p.h = g.at("h").get<int>();
      p.cells = g.at("cells").get<std::vector<std::uint8_t>>();
      m.grid_patch = std::move(p);
    }
    m.tracker = j.at("tracker").get<std::string>();
    m.mode = j.at("mode").get<std::string>();
    m.recording = j.at("recording").get<bool>();
    m.waypoints = j.at("waypoints").get<std::size_t>();
    m.external_link = j.at("external_link").get<bool>();
    m.degraded = j.at("degraded").get<bool>();
    m.authority = j.at("authority").get<bool>();
    return m;
  } catch (const Json::exception& e) {
    Reject(std::string("bad state message: ") + e.what());
  }
}

std::string SerializeError(std::string_view reason) {
  return Json{{"type", "error"}, {"reason", std::string(reason)}}.dump();
}

std::string SerializeAuthority(bool granted, bool held_by_other) {
  return Json{{"type", "authority"}, {"granted", granted}, {"held_by_other", held_by_other}}
      .dump();
}

std::vector<double> DecimateScan(const std::vector<double>& ranges,
                                 std::size_t max_rays) {
  if (max_rays == 0 || ranges.empty()) return {};
  const std::size_t stride = (ranges.size() + max_rays - 1) / max_rays;
  std::vector<double> out;
  out.reserve(max_rays);
  for (std::size_t i = 0; i < ranges.size(); i += stride) out.push_back(ranges[i]);
  return out;
}

}  // namespace twinforge::bridge
