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

#include <chrono>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>
#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "test_util.hpp"
#include "twinforge/bridge/control.hpp"
#include "twinforge/bridge/mirror.hpp"
#include "twinforge/bridge/protocol.hpp"
#include "twinforge/bridge/server.hpp"
#include "twinforge/common/error.hpp"

namespace twinforge::bridge {
namespace {

using Json = nlohmann::json;
using testing::Rng;
using testing::Uniform;

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---- protocol ----

TEST(Protocol, ClientMessagesRoundTrip) {
  auto rng = Rng(1);
  const std::optional<OperationalMode> modes[] = {
      std::nullopt, OperationalMode::kGym, OperationalMode::kHighFidelitySim,
      OperationalMode::kTestbed, OperationalMode::kDigitalTwin};
  const RecordRequest records[] = {RecordRequest::kNone, RecordRequest::kStart,
                                   RecordRequest::kStop};
  for (int i = 0; i < 200; ++i) {
    CommandMessage m;
    m.seq = i * 7;
    m.throttle = Uniform(rng, -1.0, 1.0);
    m.steering = Uniform(rng, -1.0, 1.0);
    m.brake = Uniform(rng, 0.0, 1.0);
    m.handbrake = i % 3 == 0;
    m.record = records[i % 3];
    m.mode = modes[i % 5];
    const ClientMessage parsed = ParseClientMessage(Serialize(m));
    ASSERT_TRUE(std::holds_alternative<CommandMessage>(parsed));
    EXPECT_EQ(std::get<CommandMessage>(parsed), m) << Serialize(m);
  }
  const std::vector<ClientMessage> others = {
      PingMessage{42}, HelloMessage{Role::kTeleop}, HelloMessage{Role::kVehicle},
      AuthorityMessage{AuthorityAction::kRequest}, AuthorityMessage{AuthorityAction::kRelease},
      SnapshotRequest{}};
  for (const auto& m : others) EXPECT_EQ(ParseClientMessage(Serialize(m)), m) << Serialize(m);
}

TEST(Protocol, CommandDefaultsOptionalFields) {
  const auto m = std::get<CommandMessage>(
      ParseClientMessage(R"({"type":"command","seq":3,"throttle":0.5,"steering":-0.25})"));
  EXPECT_EQ(m.seq, 3);
  EXPECT_DOUBLE_EQ(m.throttle, 0.5);
  EXPECT_DOUBLE_EQ(m.steering, -0.25);
  EXPECT_EQ(m.brake, 0.0);
  EXPECT_FALSE(m.handbrake);
  EXPECT_EQ(m.record, RecordRequest::kNone);
  EXPECT_FALSE(m.mode.has_value());
}

struct MalformedCase {
  const char* text;
  double throttle_min;
  const char* reason;
};

class ProtocolMalformed : public ::testing::TestWithParam<MalformedCase> {};

TEST_P(ProtocolMalformed, IsRejectedWithReason) {
  const auto& c = GetParam();
  try {
    ParseClientMessage(c.text, c.throttle_min);
    FAIL() << "accepted " << c.text;
  } catch (const ProtocolError& e) {
    EXPECT_NE(std::string(e.what()).find(c.reason), std::string::npos)
        << c.text << " -> " << e.what();
  }
}

INSTANTIATE_TEST_SUITE_P(
    Cases, ProtocolMalformed,
    ::testing::Values(
        MalformedCase{"{not json", -1.0, "malformed json"},
        MalformedCase{"[1,2]", -1.0, "must be an object"},
        MalformedCase{R"({"seq":1})", -1.0, "missing field 'type'"},
        MalformedCase{R"({"type":"warp"})", -1.0, "unknown message type 'warp'"},
        MalformedCase{R"({"type":"command","throttle":0,"steering":0})", -1.0,
                      "missing field 'seq'"},
        MalformedCase{R"({"type":"command","seq":-1,"throttle":0,"steering":0})", -1.0,
                      "non-negative"},
        MalformedCase{R"({"type":"command","seq":1.5,"throttle":0,"steering":0})", -1.0,
                      "must be an integer"},
        MalformedCase{R"({"type":"command","seq":1,"steering":0})", -1.0,
                      "missing field 'throttle'"},
        MalformedCase{R"({"type":"command","seq":1,"throttle":"x","steering":0})", -1.0,
                      "must be a number"},
        MalformedCase{R"({"type":"command","seq":1,"throttle":1.5,"steering":0})", -1.0,
                      "throttle out of range"},
        MalformedCase{R"({"type":"command","seq":1,"throttle":-0.5,"steering":0})", 0.0,
                      "throttle out of range"},
        MalformedCase{R"({"type":"command","seq":1,"throttle":0,"steering":-1.01})", -1.0,
                      "steering out of range"},
        MalformedCase{R"({"type":"command","seq":1,"throttle":0,"steering":0,"brake":2})",
                      -1.0, "brake out of range"},
        MalformedCase{
            R"({"type":"command","seq":1,"throttle":0,"steering":0,"handbrake":1})", -1.0,
            "must be a boolean"},
        MalformedCase{
            R"({"type":"command","seq":1,"throttle":0,"steering":0,"record":"pause"})", -1.0,
            "record must be"},
        MalformedCase{
            R"({"type":"command","seq":1,"throttle":0,"steering":0,"mode":"orbit"})", -1.0,
            "unknown mode"},
        MalformedCase{R"({"type":"ping"})", -1.0, "missing field 'seq'"},
        MalformedCase{R"({"type":"hello","role":"admin"})", -1.0, "role must be"},
        MalformedCase{R"({"type":"authority","action":"steal"})", -1.0, "action must be"}),
    [](const ::testing::TestParamInfo<MalformedCase>& info) {
      return "Case" + std::to_string(info.index);
    });

TEST(Protocol, NegativeThrottleAcceptedForSmallScale) {
  const auto m = std::get<CommandMessage>(ParseClientMessage(
      R"({"type":"command","seq":1,"throttle":-1,"steering":1})", -1.0));
  EXPECT_EQ(m.throttle, -1.0);
}

TEST(Protocol, StateRoundTripCarriesInfinityAsNull) {
  StateMessage m;
  m.seq = 17;
  m.sim_time = 1.25;
  m.pose = {1.0, -2.0, 0.5};
  m.speed = 0.75;
  m.gear = "D";
  m.scan = {1.0, kInf, 2.5};
  m.grid_patch = GridPatch{2, 3, 2, 1, {1, 2}};
  m.tracker = "tracking";
  m.mode = "twin";
  m.recording = true;
  m.waypoints = 12;
  m.external_link = true;
  m.degraded = false;
  m.authority = true;

  const std::string text = Serialize(m);
  const Json j = Json::parse(text);
  EXPECT_EQ(j["type"], "state");
  EXPECT_TRUE(j["scan"][1].is_null());

  const StateMessage back = ParseStateMessage(text);
  EXPECT_EQ(back.seq, m.seq);
  EXPECT_EQ(back.sim_time, m.sim_time);
  EXPECT_EQ(back.pose.x, m.pose.x);
  EXPECT_EQ(back.pose.y, m.pose.y);
  EXPECT_EQ(back.pose.yaw, m.pose.yaw);
  EXPECT_EQ(back.speed, m.speed);
  EXPECT_EQ(back.gear, m.gear);
  ASSERT_EQ(back.scan.size(), 3u);
  EXPECT_EQ(back.scan[0], 1.0);
  EXPECT_TRUE(std::isinf(back.scan[1]));
  EXPECT_EQ(back.grid_patch, m.grid_patch);
  EXPECT_EQ(back.tracker, m.tracker);
  EXPECT_EQ(back.mode, m.mode);
  EXPECT_EQ(back.recording, m.recording);
  EXPECT_EQ(back.waypoints, m.waypoints);
  EXPECT_EQ(back.external_link, m.external_link);
  EXPECT_EQ(back.degraded, m.degraded);
  EXPECT_EQ(back.authority, m.authority);

  m.grid_patch.reset();
  EXPECT_TRUE(Json::parse(Serialize(m))["grid_patch"].is_null());
  EXPECT_FALSE(ParseStateMessage(Serialize(m)).grid_patch.has_value());
}

TEST(Protocol, StateParserRejectsIncompleteFrames) {
  EXPECT_THROW(ParseStateMessage("{"), ProtocolError);
  EXPECT_THROW(ParseStateMessage(R"({"type":"pong","seq":1})"), ProtocolError);
  EXPECT_THROW(ParseStateMessage(R"({"type":"state","seq":1})"), ProtocolError);
}

TEST(Protocol, ErrorAndAuthorityFrames) {
  const Json e = Json::parse(SerializeError("bad thing"));
  EXPECT_EQ(e["type"], "error");
  EXPECT_EQ(e["reason"], "bad thing");
  const Json a = Json::parse(SerializeAuthority(false, true));
  EXPECT_EQ(a["type"], "authority");
  EXPECT_EQ(a["granted"], false);
  EXPECT_EQ(a["held_by_other"], true);
}

TEST(Protocol, DriveCommandScalesSteering) {
  CommandMessage m;
  m.throttle = 0.3;
  m.steering = -0.5;
  m.brake = 0.2;
  m.handbrake = true;
  const DriveCommand c = ToDriveCommand(m, 0.4);
  EXPECT_EQ(c.throttle, 0.3);
  EXPECT_DOUBLE_EQ(c.steering, -0.2);
  EXPECT_EQ(c.brake, 0.2);
  EXPECT_TRUE(c.handbrake);
}

TEST(Protocol, PatchIsRowMajorInclusive) {
  const int w = 4;
  std::vector<CellClass> classes(12, CellClass::kUnknown);
  classes[1 * w + 1] = CellClass::kFree;
  classes[1 * w + 2] = CellClass::kOccupied;
  classes[2 * w + 1] = CellClass::kOccupied;
  const GridPatch p = ExtractPatch(classes, w, CellRect{1, 1, 2, 2});
  EXPECT_EQ(p.x0, 1);
  EXPECT_EQ(p.y0, 1);
  EXPECT_EQ(p.w, 2);
  EXPECT_EQ(p.h, 2);
  EXPECT_EQ(p.cells, (std::vector<std::uint8_t>{1, 2, 2, 0}));
  EXPECT_TRUE(ExtractPatch(classes, w, CellRect{}).cells.empty());
}

TEST(Protocol, DecimationStridesFromFirstRay) {
  std::vector<double> ranges(1081);
  for (std::size_t i = 0; i < ranges.size(); ++i) ranges[i] = static_cast<double>(i);
  const auto out = DecimateScan(ranges);
  // ceil(1081 / 180) = 7
  ASSERT_EQ(out.size(), 155u);
  for (std::size_t k = 0; k < out.size(); ++k) EXPECT_EQ(out[k], static_cast<double>(7 * k));

  for (std::size_t n = 1; n < 800; n += 13) {
    const std::vector<double> r(n, 1.0);
    const auto d = DecimateScan(r, 90);
    EXPECT_LE(d.size(), 90u);
    EXPECT_GE(d.size(), std::min<std::size_t>(n, 90) / 2);
  }
  EXPECT_EQ(DecimateScan(std::vector<double>(100, 1.0)).size(), 100u);
  EXPECT_TRUE(DecimateScan({}).empty());
}

// ---- wire contract ----

// Validator for the schema keywords docs/protocol.schema.json uses.
class SchemaSubset {
 public:
  SchemaSubset()
      : root_(Json::parse(testing::ReadFile(std::string(TWINFORGE_SOURCE_DIR) +
                                            "/docs/protocol.schema.json"))) {}

  bool Valid(const Json& v) const { return Check(root_, v); }

 private:
  const Json& Resolve(const Json& s) const {
    if (!s.contains("$ref")) return s;
    const std::string ref = s["$ref"];
    return root_["$defs"][ref.substr(ref.rfind('/') + 1)];
  }

  static bool TypeMatches(const std::string& t, const Json& v) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "boolean") return v.is_boolean();
    if (t == "integer") return v.is_number_integer();
    if (t == "number") return v.is_number();
    if (t == "null") return v.is_null();
    return false;
  }

  bool Check(const Json& schema, const Json& v) const {
    const Json& s = Resolve(schema);
    if (s.contains("oneOf")) {
      int n = 0;
      for (const auto& alt : s["oneOf"]) n += Check(alt, v) ? 1 : 0;
      if (n != 1) return false;
    }
    if (s.contains("const") && v != s["const"]) return false;
    if (s.contains("enum")) {
      bool any = false;
      for (const auto& e : s["enum"]) any = any || e == v;
      if (!any) return false;
    }
    if (s.contains("type")) {
      bool any = false;
      if (s["type"].is_array()) {
        for (const auto& t : s["type"]) any = any || TypeMatches(t, v);
      } else {
        any = TypeMatches(s["type"], v);
      }
      if (!any) return false;
    }
    if (v.is_number()) {
      if (s.contains("minimum") && v.get<double>() < s["minimum"].get<double>()) return false;
      if (s.contains("maximum") && v.get<double>() > s["maximum"].get<double>()) return false;
    }
    if (v.is_array()) {
      if (s.contains("maxItems") && v.size() > s["maxItems"].get<std::size_t>()) return false;
      if (s.contains("items")) {
        for (const auto& e : v) {
          if (!Check(s["items"], e)) return false;
        }
      }
    }
    if (v.is_object()) {
      if (s.contains("required")) {
        for (const auto& k : s["required"]) {
          if (!v.contains(k.get<std::string>())) return false;
        }
      }
      const Json props = s.value("properties", Json::object());
      for (const auto& [k, e] : v.items()) {
        if (props.contains(k)) {
          if (!Check(props[k], e)) return false;
        } else if (s.value("additionalProperties", true) == false) {
          return false;
        }
      }
    }
    return true;
  }

  Json root_;
};

TEST(WireContract, EveryFrameKindConformsToSchema) {
  const SchemaSubset schema;
  auto rng = Rng(5);
  for (int i = 0; i < 100; ++i) {
    CommandMessage m;
    m.seq = i;
    m.throttle = Uniform(rng, -1, 1);
    m.steering = Uniform(rng, -1, 1);
    m.brake = Uniform(rng, 0, 1);
    m.record = i % 2 ? RecordRequest::kStart : RecordRequest::kNone;
    if (i % 3 == 0) m.mode = OperationalMode::kTestbed;
    EXPECT_TRUE(schema.Valid(Json::parse(Serialize(m)))) << Serialize(m);
  }
  for (const ClientMessage& m :
       std::vector<ClientMessage>{PingMessage{1}, HelloMessage{Role::kVehicle},
                                  AuthorityMessage{AuthorityAction::kRelease}, SnapshotRequest{}}) {
    EXPECT_TRUE(schema.Valid(Json::parse(Serialize(m)))) << Serialize(m);
  }

  StateMessage st;
  st.scan = DecimateScan(std::vector<double>(1081, kInf));
  st.scan[3] = 2.0;
  EXPECT_TRUE(schema.Valid(Json::parse(Serialize(st))));
  st.grid_patch = GridPatch{0, 0, 2, 1, {0, 2}};
  st.tracker = "terminated";
  st.mode = "twin";
  EXPECT_TRUE(schema.Valid(Json::parse(Serialize(st))));
  st.scan.assign(181, 1.0);
  EXPECT_FALSE(schema.Valid(Json::parse(Serialize(st))));

  EXPECT_TRUE(schema.Valid(Json::parse(SerializeError("x"))));
  EXPECT_TRUE(schema.Valid(Json::parse(SerializeAuthority(true, false))));
  EXPECT_TRUE(schema.Valid(Json{{"type", "pong"}, {"seq", 3}}));
}

TEST(WireContract, SchemaRejectsWhatTheParserRejects) {
  const SchemaSubset schema;
  for (const char* text :
       {R"({"seq":1})", R"({"type":"warp"})", R"({"type":"command","throttle":0,"steering":0})",
        R"({"type":"command","seq":-1,"throttle":0,"steering":0})",
        R"({"type":"command","seq":1.5,"throttle":0,"steering":0})",
        R"({"type":"command","seq":1,"throttle":1.5,"steering":0})",
        R"({"type":"command","seq":1,"throttle":0,"steering":0,"brake":2})",
        R"({"type":"command","seq":1,"throttle":0,"steering":0,"handbrake":1})",
        R"({"type":"command","seq":1,"throttle":0,"steering":0,"record":"pause"})",
        R"({"type":"command","seq":1,"throttle":0,"steering":0,"mode":"orbit"})",
        R"({"type":"hello","role":"admin"})", R"({"type":"authority","action":"steal"})"}) {
    EXPECT_THROW(ParseClientMessage(text), ProtocolError) << text;
    EXPECT_FALSE(schema.Valid(Json::parse(text))) << text;
  }
}

// ---- control ----

TEST(Authority, FirstComeSingleHolder) {
  AuthorityManager a;
  EXPECT_FALSE(a.holder(0.0).has_value());
  EXPECT_TRUE(a.Request(1, 0.0));
  EXPECT_TRUE(a.Request(1, 0.1));
  EXPECT_FALSE(a.Request(2, 0.2));
  EXPECT_TRUE(a.Holds(1, 0.2));
  EXPECT_FALSE(a.Holds(2, 0.2));
  a.Release(2);
  EXPECT_EQ(a.holder(0.3), 1u);
  a.Release(1);
  EXPECT_FALSE(a.holder(0.3).has_value());
  EXPECT_TRUE(a.Request(2, 0.4));
}

TEST(Authority, TimeoutExpiresSilentHolder) {
  AuthorityManager a(1.0);
  ASSERT_TRUE(a.Request(1, 0.0));
  a.Touch(1, 0.8);
  a.Touch(2, 1.5);
  EXPECT_TRUE(a.Holds(1, 1.7));
  EXPECT_FALSE(a.Request(2, 1.7));
  EXPECT_FALSE(a.Holds(1, 1.9));
  EXPECT_TRUE(a.Request(2, 1.9));
}

TEST(Authority, ZeroTimeoutNeverExpires) {
  AuthorityManager a;
  ASSERT_TRUE(a.Request(1, 0.0));
  EXPECT_TRUE(a.Holds(1, 1e9));
}

TEST(Mailbox, ZeroUntilFirstCommand) {
  CommandMailbox box(0.5);
  EXPECT_EQ(box.Take(0.0), DriveCommand{});
  EXPECT_FALSE(box.expired(10.0));
}

TEST(Mailbox, LatestWins) {
  CommandMailbox box(0.5);
  box.Post(1, {0.2, 0.1, 0.0, false}, 0.0);
  box.Post(1, {0.6, -0.1, 0.0, false}, 0.01);
  const DriveCommand c = box.Take(0.02);
  EXPECT_EQ(c.throttle, 0.6);
  EXPECT_EQ(c.steering, -0.1);
  EXPECT_EQ(box.Take(0.03), c);
}

TEST(Mailbox, HeartbeatLapseYieldsZero) {
  CommandMailbox box(0.5);
  box.Post(1, {0.5, 0.2, 0.0, false}, 1.0);
  EXPECT_EQ(box.Take(1.5).throttle, 0.5);
  EXPECT_EQ(box.Take(1.51), DriveCommand{});
  EXPECT_TRUE(box.expired(1.51));
  box.Heard(1, 1.6);
  EXPECT_EQ(box.Take(1.7).throttle, 0.5);
  box.Heard(2, 2.0);
  EXPECT_EQ(box.Take(2.2), DriveCommand{});
}

TEST(Mailbox, CloseDropsSenderCommand) {
  CommandMailbox box(0.5);
  box.Post(1, {0.5, 0.0, 0.0, false}, 0.0);
  box.Close(2);
  EXPECT_EQ(box.Take(0.1).throttle, 0.5);
  box.Close(1);
  EXPECT_EQ(box.Take(0.1), DriveCommand{});
  EXPECT_FALSE(box.expired(5.0));
}

// ---- mirror ----

class FakeTarget : public ExternalTarget {
 public:
  std::optional<double> Deliver(const std::string& payload, double stamp) override {
    if (!reachable) return std::nullopt;
    received.push_back(payload);
    return stamp + latency;
  }
  bool Alive() const override { return alive; }

  bool alive = true;
  bool reachable = true;
  double latency = 0.002;
  std::vector<std::string> received;
};

TEST(Mirror, LogsAreIdenticalWhenReachable) {
  FakeTarget target;
  CommandMirror mirror(&target, 0.5);
  auto rng = Rng(3);
  for (int step = 0; step < 300; ++step) {
    const DriveCommand c{Uniform(rng, -1, 1), Uniform(rng, -0.5, 0.5), Uniform(rng, 0, 1),
                         step % 50 == 0};
    const std::string& payload = mirror.Mirror(step, step * 0.01, c);
    EXPECT_EQ(payload, CommandPayload(step, c, 0.5));
    EXPECT_FALSE(mirror.degraded());
  }
  ASSERT_EQ(mirror.sim_log().size(), 300u);
  ASSERT_EQ(mirror.bridge_log().size(), 300u);
  for (std::size_t i = 0; i < 300; ++i) {
    const auto& s = mirror.sim_log()[i];
    const auto& b = mirror.bridge_log()[i];
    EXPECT_EQ(s.step, b.step);
    EXPECT_EQ(s.payload, b.payload);
    EXPECT_EQ(s.payload, target.received[i]);
    ASSERT_TRUE(s.external_stamp.has_value());
    EXPECT_DOUBLE_EQ(*s.external_stamp, s.sim_stamp + 0.002);
  }
}

TEST(Mirror, PayloadNormalizesSteering) {
  const std::string p = CommandPayload(9, {0.4, -0.25, 0.1, true}, 0.5);
  const auto m = std::get<CommandMessage>(ParseClientMessage(p));
  EXPECT_EQ(m.seq, 9);
  EXPECT_EQ(m.throttle, 0.4);
  EXPECT_DOUBLE_EQ(m.steering, -0.5);
  EXPECT_EQ(m.brake, 0.1);
  EXPECT_TRUE(m.handbrake);
}

TEST(Mirror, UnreachableTargetDegradesToSimOnly) {
  FakeTarget target;
  CommandMirror mirror(&target, 0.5);
  mirror.Mirror(0, 0.00, {});
  target.reachable = false;
  mirror.Mirror(1, 0.01, {});
  EXPECT_TRUE(mirror.degraded());
  target.reachable = true;
  target.alive = false;
  mirror.Mirror(2, 0.02, {});
  EXPECT_TRUE(mirror.degraded());
  target.alive = true;
  mirror.Mirror(3, 0.03, {});
  EXPECT_FALSE(mirror.degraded());

  EXPECT_EQ(mirror.sim_log().size(), 4u);
  ASSERT_EQ(mirror.bridge_log().size(), 2u);
  EXPECT_EQ(mirror.bridge_log()[0].step, 0);
  EXPECT_EQ(mirror.bridge_log()[1].step, 3);
  EXPECT_FALSE(mirror.sim_log()[1].external_stamp.has_value());
  EXPECT_FALSE(mirror.sim_log()[2].external_stamp.has_value());
}

TEST(Mirror, NoTargetIsAlwaysDegraded) {
  CommandMirror mirror(nullptr, 0.5);
  mirror.Mirror(0, 0.0, {0.1, 0.0, 0.0, false});
  EXPECT_TRUE(mirror.degraded());
  EXPECT_EQ(mirror.sim_log().size(), 1u);
  EXPECT_TRUE(mirror.bridge_log().empty());
}

// ---- server over localhost ----

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;
using Clock = std::chrono::steady_clock;

Clock::time_point Deadline(double seconds) {
  return Clock::now() +
         std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
}

// Synchronous test client. One read stays pending; frames queue up until
// consumed.
class WsClient {
 public:
  explicit WsClient(std::uint16_t port, const std::string& target = "/sim") : ws_(io_) {
    ws_.next_layer().connect(tcp::endpoint(asio::ip::make_address("127.0.0.1"), port));
    ws_.handshake("127.0.0.1:" + std::to_string(port), target);
    ws_.text(true);
    Pump();
  }

  ~WsClient() {
    beast::error_code ec;
    ws_.next_layer().socket().shutdown(tcp::socket::shutdown_both, ec);
    ws_.next_layer().socket().close(ec);
  }

  void Send(const std::string& text) {
    bool done = false;
    ws_.async_write(asio::buffer(text), [&](beast::error_code ec, std::size_t) {
      ASSERT_FALSE(ec) << ec.message();
      done = true;
    });
    while (!done) {
      io_.restart();
      io_.run_one();
    }
  }

  void Send(const Json& j) { Send(j.dump()); }

  // First queued or incoming frame matching `pred`; earlier frames are
  // discarded.
  std::optional<Json> Next(const std::function<bool(const Json&)>& pred,
                           double timeout = 2.0) {
    const auto deadline = Deadline(timeout);
    for (;;) {
      while (!frames_.empty()) {
        Json j = Json::parse(frames_.front());
        frames_.pop_front();
        if (pred(j)) return j;
      }
      if (closed_ || Clock::now() >= deadline) return std::nullopt;
      io_.restart();
      io_.run_until(deadline);
    }
  }

  std::optional<Json> NextOfType(const std::string& type, double timeout = 2.0) {
    return Next([&](const Json& j) { return j.value("type", "") == type; }, timeout);
  }

  bool closed() const { return closed_; }

 private:
  void Pump() {
    ws_.async_read(buffer_, [this](beast::error_code ec, std::size_t) {
      if (ec) {
        closed_ = true;
        return;
      }
      frames_.push_back(beast::buffers_to_string(buffer_.data()));
      buffer_.consume(buffer_.size());
      io_.stop();
      Pump();
    });
  }

  asio::io_context io_;
  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  std::deque<std::string> frames_;
  bool closed_ = false;
};

bool Eventually(const std::function<bool()>& pred, double timeout = 2.0) {
  const auto deadline = Deadline(timeout);
  while (Clock::now() < deadline) {
    if (pred()) return true;
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  return pred();
}

Json CommandFrame(std::int64_t seq, double throttle, double steering) {
  return {{"type", "command"}, {"seq", seq}, {"throttle", throttle}, {"steering", steering}};
}

std::shared_ptr<Snapshot> MakeSnapshot(double t, CellRect dirty = {}) {
  auto s = std::make_shared<Snapshot>();
  s->sim_time = t;
  s->pose = {t, 0.0, 0.0};
  s->speed = 1.0;
  s->gear = "D";
  s->scan = {1.0, kInf, 3.0};
  auto classes = std::make_shared<std::vector<CellClass>>(6 * 4, CellClass::kUnknown);
  (*classes)[5] = CellClass::kOccupied;
  s->classes = classes;
  s->grid_width = 6;
  s->grid_height = 4;
  s->dirty = dirty;
  return s;
}

class BridgeServerTest : public ::testing::Test {
 protected:
  void StartServer(ServerConfig config = {}) {
    config.port = 0;
    config.stream_rate = 50.0;
    server_ = std::make_unique<BridgeServer>(config);
    server_->Start();
    ASSERT_GT(server_->port(), 0);
  }

  std::unique_ptr<BridgeServer> server_;
};

TEST_F(BridgeServerTest, StreamsStateWithIncreasingSeq) {
  StartServer();
  WsClient client(server_->port());
  server_->Publish(MakeSnapshot(0.5));

  const auto first = client.NextOfType("state");
  ASSERT_TRUE(first.has_value());
  EXPECT_EQ((*first)["sim_time"], 0.5);
  EXPECT_EQ((*first)["gear"], "D");
  EXPECT_TRUE((*first)["scan"][1].is_null());
  // The first frame after connecting carries the whole grid.
  const Json& patch = (*first)["grid_patch"];
  ASSERT_FALSE(patch.is_null());
  EXPECT_EQ(patch["w"], 6);
  EXPECT_EQ(patch["h"], 4);
  EXPECT_EQ(patch["cells"][5], 2);

  std::int64_t last = (*first)["seq"].get<std::int64_t>();
  for (int i = 0; i < 5; ++i) {
    const auto s = client.NextOfType("state");
    ASSERT_TRUE(s.has_value());
    EXPECT_GT((*s)["seq"].get<std::int64_t>(), last);
    last = (*s)["seq"].get<std::int64_t>();
    EXPECT_TRUE((*s)["grid_patch"].is_null());
  }

  server_->Publish(MakeSnapshot(1.0, CellRect{2, 1, 3, 1}));
  const auto changed = client.Next(
      [](const Json& j) { return j["type"] == "state" && !j["grid_patch"].is_null(); });
  ASSERT_TRUE(changed.has_value());
  EXPECT_EQ((*changed)["grid_patch"]["x0"], 2);
  EXPECT_EQ((*changed)["grid_patch"]["y0"], 1);
  EXPECT_EQ((*changed)["grid_patch"]["w"], 2);
  EXPECT_EQ((*changed)["grid_patch"]["h"], 1);
}

TEST_F(BridgeServerTest, SnapshotRequestResendsWholeGrid) {
  StartServer();
  WsClient client(server_->port());
  server_->Publish(MakeSnapshot(0.1));
  ASSERT_TRUE(client.NextOfType("state").has_value());
  client.Send(Json{{"type", "snapshot"}});
  const auto full = client.Next([](const Json& j) {
    return j["type"] == "state" && !j["grid_patch"].is_null() && j["grid_patch"]["w"] == 6;
  });
  ASSERT_TRUE(full.has_value());
  EXPECT_EQ((*full)["grid_patch"]["cells"].size(), 24u);
}

TEST_F(BridgeServerTest, MalformedFrameGetsErrorAndConnectionStays) {
  StartServer();
  WsClient client(server_->port());
  client.Send(std::string("{oops"));
  const auto err = client.NextOfType("error");
  ASSERT_TRUE(err.has_value());
  EXPECT_EQ((*err)["reason"], "malformed json");

  client.Send(Json{{"type", "command"}, {"seq", 1}, {"throttle", 3.0}, {"steering", 0.0}});
  const auto range = client.NextOfType("error");
  ASSERT_TRUE(range.has_value());
  EXPECT_EQ((*range)["reason"], "throttle out of range");

  server_->Publish(MakeSnapshot(0.2));
  EXPECT_TRUE(client.NextOfType("state").has_value());
  EXPECT_FALSE(client.closed());
  EXPECT_EQ(server_->connections(), 1u);
}

TEST_F(BridgeServerTest, PingGetsPong) {
  StartServer();
  WsClient client(server_->port());
  client.Send(Json{{"type", "ping"}, {"seq", 77}});
  const auto pong = client.NextOfType("pong");
  ASSERT_TRUE(pong.has_value());
  EXPECT_EQ((*pong)["seq"], 77);
}

TEST_F(BridgeServerTest, LatestCommandWinsAndSteeringIsScaled) {
  ServerConfig config;
  config.steering_limit = 0.4;
  config.heartbeat = 5.0;
  StartServer(config);
  WsClient client(server_->port());
  client.Send(CommandFrame(1, 0.2, 0.5));
  client.Send(CommandFrame(2, 0.7, -0.5));
  ASSERT_TRUE(Eventually([&] { return server_->TakeCommand().throttle == 0.7; }));
  const DriveCommand c = server_->TakeCommand();
  EXPECT_DOUBLE_EQ(c.steering, -0.2);
}

TEST_F(BridgeServerTest, HeartbeatExpiryYieldsZeroCommand) {
  ServerConfig config;
  config.heartbeat = 0.2;
  StartServer(config);
  WsClient client(server_->port());
  client.Send(CommandFrame(1, 0.5, 0.0));
  ASSERT_TRUE(Eventually([&] { return server_->TakeCommand().throttle == 0.5; }));
  std::this_thread::sleep_for(std::chrono::milliseconds(350));
  EXPECT_EQ(server_->TakeCommand(), DriveCommand{});

  // Pings keep a sender engaged.
  client.Send(CommandFrame(2, 0.4, 0.0));
  ASSERT_TRUE(Eventually([&] { return server_->TakeCommand().throttle == 0.4; }));
  for (int i = 0; i < 6; ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(80));
    client.Send(Json{{"type", "ping"}, {"seq", i}});
    ASSERT_TRUE(client.NextOfType("pong").has_value());
    EXPECT_EQ(server_->TakeCommand().throttle, 0.4);
  }
}

TEST_F(BridgeServerTest, SecondConnectionIsRefusedAuthority) {
  ServerConfig config;
  config.heartbeat = 5.0;
  StartServer(config);
  WsClient a(server_->port());
  WsClient b(server_->port());
  a.Send(CommandFrame(1, 0.3, 0.0));
  ASSERT_TRUE(Eventually([&] { return server_->TakeCommand().throttle == 0.3; }));

  b.Send(CommandFrame(1, 0.9, 0.0));
  const auto err = b.NextOfType("error");
  ASSERT_TRUE(err.has_value());
  EXPECT_EQ((*err)["reason"], "teleop authority held by another connection");
  EXPECT_EQ(server_->TakeCommand().throttle, 0.3);

  b.Send(Json{{"type", "authority"}, {"action", "request"}});
  const auto refused = b.NextOfType("authority");
  ASSERT_TRUE(refused.has_value());
  EXPECT_EQ((*refused)["granted"], false);
  EXPECT_EQ((*refused)["held_by_other"], true);

  a.Send(Json{{"type", "authority"}, {"action", "release"}});
  ASSERT_TRUE(a.NextOfType("authority").has_value());
  EXPECT_EQ(server_->TakeCommand(), DriveCommand{});

  b.Send(Json{{"type", "authority"}, {"action", "request"}});
  const auto granted = b.NextOfType("authority");
  ASSERT_TRUE(granted.has_value());
  EXPECT_EQ((*granted)["granted"], true);

  server_->Publish(MakeSnapshot(0.3));
  const auto sb = b.NextOfType("state");
  const auto sa = a.NextOfType("state");
  ASSERT_TRUE(sa && sb);
  EXPECT_EQ((*sb)["authority"], true);
  EXPECT_EQ((*sa)["authority"], false);
}

TEST_F(BridgeServerTest, DisconnectReleasesAuthorityAndCommand) {
  ServerConfig config;
  config.heartbeat = 5.0;
  StartServer(config);
  {
    WsClient a(server_->port());
    a.Send(CommandFrame(1, 0.6, 0.0));
    ASSERT_TRUE(Eventually([&] { return server_->TakeCommand().throttle == 0.6; }));
  }
  ASSERT_TRUE(Eventually([&] { return server_->connections() == 0; }));
  EXPECT_EQ(server_->TakeCommand(), DriveCommand{});

  WsClient b(server_->port());
  b.Send(CommandFrame(1, 0.1, 0.0));
  EXPECT_TRUE(Eventually([&] { return server_->TakeCommand().throttle == 0.1; }));
}

TEST_F(BridgeServerTest, RecordAndModeRequestsReachSimulation) {
  StartServer();
  WsClient client(server_->port());
  Json j = CommandFrame(1, 0.0, 0.0);
  j["record"] = "start";
  client.Send(j);
  j = CommandFrame(2, 0.0, 0.0);
  j["mode"] = "twin";
  client.Send(j);
  std::vector<ControlRequest> all;
  ASSERT_TRUE(Eventually([&] {
    for (auto& r : server_->TakeRequests()) all.push_back(r);
    return all.size() >= 2;
  }));
  EXPECT_EQ(all[0].record, RecordRequest::kStart);
  EXPECT_FALSE(all[0].mode.has_value());
  EXPECT_EQ(all[1].record, RecordRequest::kNone);
  EXPECT_EQ(all[1].mode, OperationalMode::kDigitalTwin);
  EXPECT_EQ(all[0].connection, all[1].connection);
}

TEST_F(BridgeServerTest, ServerSideErrorReachesConnection) {
  StartServer();
  WsClient client(server_->port());
  client.Send(CommandFrame(1, 0.0, 0.0));
  ConnectionId id = 0;
  Json j = CommandFrame(2, 0.0, 0.0);
  j["record"] = "stop";
  client.Send(j);
  ASSERT_TRUE(Eventually([&] {
    const auto r = server_->TakeRequests();
    if (!r.empty()) id = r.front().connection;
    return id != 0;
  }));
  server_->SendError(id, "not recording");
  const auto err = client.NextOfType("error");
  ASSERT_TRUE(err.has_value());
  EXPECT_EQ((*err)["reason"], "not recording");
}

TEST_F(BridgeServerTest, VehiclePeerReceivesMirroredPayload) {
  ServerConfig config;
  config.heartbeat = 5.0;
  StartServer(config);
  ExternalTarget& link = server_->vehicle_link();
  EXPECT_FALSE(link.Alive());
  EXPECT_FALSE(link.Deliver("x", 0.0).has_value());

  WsClient vehicle(server_->port());
  vehicle.Send(Json{{"type", "hello"}, {"role", "vehicle"}});
  ASSERT_TRUE(Eventually([&] { return link.Alive(); }));

  CommandMirror mirror(&link, 0.5);
  const std::string payload = mirror.Mirror(4, 0.04, {0.25, 0.1, 0.0, false});
  EXPECT_FALSE(mirror.degraded());
  const auto got = vehicle.NextOfType("command");
  ASSERT_TRUE(got.has_value());
  EXPECT_EQ(got->dump(), payload);
  EXPECT_EQ(mirror.bridge_log().back().payload, mirror.sim_log().back().payload);

  StateMessage report;
  report.pose = {3.0, 4.0, 0.1};
  report.speed = 1.5;
  vehicle.Send(Serialize(report));
  ASSERT_TRUE(Eventually([&] { return link.LatestState().has_value(); }));
  EXPECT_EQ(link.LatestState()->pose.x, 3.0);
  EXPECT_EQ(link.LatestState()->speed, 1.5);

  // The vehicle peer is not streamed sim state.
  server_->Publish(MakeSnapshot(0.4));
  EXPECT_FALSE(vehicle.NextOfType("state", 0.2).has_value());

  WsClient other(server_->port());
  other.Send(Json{{"type", "hello"}, {"role", "vehicle"}});
  const auto err = other.NextOfType("error");
  ASSERT_TRUE(err.has_value());
  EXPECT_EQ((*err)["reason"], "vehicle peer already connected");
}

TEST_F(BridgeServerTest, VehicleDisconnectDegradesMirror) {
  ServerConfig config;
  config.heartbeat = 5.0;
  StartServer(config);
  ExternalTarget& link = server_->vehicle_link();
  CommandMirror mirror(&link, 0.5);
  {
    WsClient vehicle(server_->port());
    vehicle.Send(Json{{"type", "hello"}, {"role", "vehicle"}});
    ASSERT_TRUE(Eventually([&] { return link.Alive(); }));
    mirror.Mirror(0, 0.0, {});
    EXPECT_FALSE(mirror.degraded());
  }
  ASSERT_TRUE(Eventually([&] { return !link.Alive(); }));
  mirror.Mirror(1, 0.01, {});
  EXPECT_TRUE(mirror.degraded());
  EXPECT_EQ(mirror.sim_log().size(), 2u);
  EXPECT_EQ(mirror.bridge_log().size(), 1u);
}

TEST_F(BridgeServerTest, WrongPathIsNotUpgraded) {
  StartServer();
  EXPECT_ANY_THROW(WsClient(server_->port(), "/other"));
}

TEST_F(BridgeServerTest, OccupiedPortIsUnavailable) {
  StartServer();
  ServerConfig config;
  config.port = server_->port();
  BridgeServer second(config);
  try {
    second.Start();
    FAIL() << "bound an occupied port";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnavailable);
  }
}

TEST_F(BridgeServerTest, StopClosesClients) {
  StartServer();
  WsClient client(server_->port());
  ASSERT_TRUE(Eventually([&] { return server_->connections() == 1; }));
  server_->Stop();
  EXPECT_FALSE(client.NextOfType("state", 1.0).has_value());
  EXPECT_TRUE(client.closed());
  EXPECT_EQ(server_->connections(), 0u);
}

}  // namespace
}  // namespace twinforge::bridge
