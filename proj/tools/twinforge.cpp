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

#include <atomic>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "twinforge/common/error.hpp"
#include "twinforge/common/logging.hpp"
#include "twinforge/simcli/command_log.hpp"
#include "twinforge/simcli/runner.hpp"
#include "twinforge/simcli/scenario.hpp"
#include "twinforge/simcli/serve.hpp"

namespace {

using namespace twinforge;

constexpr const char* kFooter = R"(Logs:
  states.csv   step,time,x,y,yaw,speed,lateral_speed,yaw_rate,steering,gear,rpm,
               throttle_cmd,steering_cmd,brake_cmd,handbrake_cmd,target,
               cross_track,status
               one row per step after it is applied; floats at 17 significant
               digits; target -1, cross_track nan and status idle without a tracker
  sensors.csv  step,time,ips_xyz,accel_xyz,gyro_xyz,roll,pitch,yaw,q0..q3,
               encoder_fl,encoder_fr,encoder_rl,encoder_rr (when enabled)

Exit codes:
  0  success
  2  missing file or invalid input
  3  non-finite vehicle state
  4  bridge peer unavailable

Environment:
  TWINFORGE_LOG  trace|debug|info|warn|error|off (default warn))";

std::atomic<bool> g_stop{false};

extern "C" void OnSignal(int) { g_stop = true; }

struct RunFlags {
  std::string scenario;
  std::string out;
  std::string mode;
  std::string log;
};

void AddRunFlags(CLI::App* cmd, RunFlags& flags) {
  cmd->add_option("--scenario", flags.scenario, "Scenario JSON file")->required();
  cmd->add_option("--out", flags.out, "Output directory (overrides the scenario)");
  cmd->add_option("--mode", flags.mode, "Operational mode")
      ->check(CLI::IsMember({"gym", "sim", "testbed", "twin"}));
}

Scenario Load(const RunFlags& flags) {
  Scenario s = LoadScenario(flags.scenario, {TWINFORGE_PROFILE_DIR});
  if (!flags.mode.empty()) s.mode = *ParseMode(flags.mode);
  return s;
}

RunOptions Options(const RunFlags& flags) {
  RunOptions options;
  if (!flags.out.empty()) options.output = flags.out;
  return options;
}

int Report(const RunResult& r) {
  if (r.exit_code != kExitOk) {
    std::fprintf(stderr, "twinforge: %s\n", r.message.c_str());
    return r.exit_code;
  }
  for (const auto& a : r.artifacts) std::printf("%s\n", a.string().c_str());
  return kExitOk;
}

int RunStage(const RunFlags& flags, Stage stage) {
  Scenario s = Load(flags);
  if (stage == Stage::kTrack && !s.trajectory) {
    throw Error(ErrorCode::kInvalidArgument, "track needs a scenario with 'trajectory'");
  }
  s.stage = stage;
  return Report(run_scenario(s, Options(flags)));
}

int RunReplay(const RunFlags& flags) {
  const Scenario s = Load(flags);
  std::filesystem::path log_path = flags.log;
  if (log_path.empty()) {
    if (!s.commands) throw Error(ErrorCode::kInvalidArgument, "replay needs --log or 'commands'");
    log_path = *s.commands;
  }
  return Report(replay(load_command_log(log_path), s, Options(flags)));
}

struct ServeFlags {
  RunFlags run;
  std::string address = "127.0.0.1";
  int port = 8765;
  int authority_timeout_ms = 0;
  double duration = 0.0;
};

int RunServe(const ServeFlags& flags) {
  const Scenario s = Load(flags.run);
  ServeOptions options;
  options.server.address = flags.address;
  options.server.port = static_cast<std::uint16_t>(flags.port);
  options.server.authority_timeout = flags.authority_timeout_ms / 1000.0;
  options.duration = flags.duration;
  if (!flags.run.out.empty()) options.output = flags.run.out;
  options.stop = &g_stop;
  options.on_listening = [&](std::uint16_t port) {
    std::printf("listening on ws://%s:%u/sim\n", flags.address.c_str(), port);
    std::fflush(stdout);
  };
  std::signal(SIGINT, OnSignal);
  std::signal(SIGTERM, OnSignal);
  return Report(serve(s, options));
}

}  // namespace

int main(int argc, char** argv) {
  InitLoggingFromEnv();
  CLI::App app{"TwinForge headless vehicle simulator"};
  app.footer(kFooter);
  app.require_subcommand(1);

  RunFlags map_flags;
  RunFlags record_flags;
  RunFlags track_flags;
  RunFlags replay_flags;
  AddRunFlags(app.add_subcommand("map", "Drive the scenario and write an occupancy map"), map_flags);
  AddRunFlags(app.add_subcommand("record", "Drive the scenario and record a trajectory"),
              record_flags);
  AddRunFlags(app.add_subcommand("track", "Track the scenario's trajectory autonomously"),
              track_flags);
  CLI::App* replay_cmd = app.add_subcommand("replay", "Re-apply a command log and write the state log");
  AddRunFlags(replay_cmd, replay_flags);
  replay_cmd->add_option("--log", replay_flags.log, "Command log CSV (overrides the scenario)");

  ServeFlags serve_flags;
  CLI::App* serve_cmd =
      app.add_subcommand("serve", "Run the scenario in real time behind the WebSocket bridge");
  AddRunFlags(serve_cmd, serve_flags.run);
  serve_cmd->add_option("--address", serve_flags.address, "Bind address");
  serve_cmd->add_option("--port", serve_flags.port, "TCP port of ws://address:port/sim")
      ->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--authority-timeout-ms", serve_flags.authority_timeout_ms,
                        "Release teleop authority after this much holder silence (0 never)")
      ->check(CLI::NonNegativeNumber);
  serve_cmd->add_option("--duration", serve_flags.duration,
                        "Sim seconds to serve (default: the scenario's duration)")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (app.got_subcommand("map")) return RunStage(map_flags, Stage::kMap);
    if (app.got_subcommand("record")) return RunStage(record_flags, Stage::kRecord);
    if (app.got_subcommand("track")) return RunStage(track_flags, Stage::kTrack);
    if (app.got_subcommand("replay")) return RunReplay(replay_flags);
    if (app.got_subcommand("serve")) return RunServe(serve_flags);
  } catch (const Error& e) {
    std::fprintf(stderr, "twinforge: %s\n", e.what());
    return ExitCodeFor(e.code());
  }
  return kExitInvalid;
}
