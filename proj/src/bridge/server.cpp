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

#include "twinforge/bridge/server.hpp"

#include <atomic>
#include <chrono>
#include <deque>
#include <map>
#include <mutex>
#include <thread>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "twinforge/common/error.hpp"

namespace twinforge::bridge {
namespace {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

constexpr std::size_t kMaxQueuedFrames = 8;  // state frames are skipped beyond this

CellRect Union(const CellRect& a, const CellRect& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return {std::min(a.x0, b.x0), std::min(a.y0, b.y0), std::max(a.x1, b.x1),
          std::max(a.y1, b.y1)};
}

}  // namespace

struct BridgeServer::Impl : ExternalTarget {
  class Session;

  explicit Impl(ServerConfig c)
      : config(std::move(c)),
        authority(config.authority_timeout),
        mailbox(config.heartbeat),
        acceptor(io),
        ticker(io),
        epoch(std::chrono::steady_clock::now()) {}

  double Now() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - epoch).count();
  }

  void Accept();
  void Tick();
  void Broadcast();
  void Remove(ConnectionId id);

  // ExternalTarget, called from the simulation thread.
  std::optional<double> Deliver(const std::string& payload, double stamp) override;
  bool Alive() const override;
  std::optional<ExternalState> LatestState() const override;

  ServerConfig config;
  AuthorityManager authority;
  CommandMailbox mailbox;

  asio::io_context io;
  tcp::acceptor acceptor;
  asio::steady_timer ticker;
  std::thread thread;
  std::chrono::steady_clock::time_point epoch;
  std::atomic<bool> running{false};

  // I/O thread only.
  std::map<ConnectionId, std::shared_ptr<Session>> sessions;
  std::shared_ptr<const Snapshot> latest;
  ConnectionId next_id = 1;

  std::atomic<std::size_t> connection_count{0};

  mutable std::mutex shared_mu;
  std::vector<ControlRequest> requests;
  std::optional<ConnectionId> vehicle;
  double vehicle_heard = 0.0;
  std::optional<ExternalState> vehicle_state;
};

class BridgeServer::Impl::Session : public std::enable_shared_from_this<Session> {
 public:
  Session(Impl& server, ConnectionId id, tcp::socket socket)
      : server_(server), id_(id), ws_(std::move(socket)) {}

  ConnectionId id() const { return id_; }

  void Run() {
    http::async_read(ws_.next_layer(), buffer_, request_,
                     [self = shared_from_this()](beast::error_code ec, std::size_t) {
                       self->OnRequest(ec);
                     });
  }

  void Send(std::string frame, bool droppable = false) {
    if (closed_ || (droppable && queue_.size() >= kMaxQueuedFrames)) return;
    queue_.push_back(std::move(frame));
    if (queue_.size() == 1) WriteNext();
  }

  // Folds a new snapshot's changed cells into this session's pending patch.
  void Accumulate(const CellRect& dirty) { dirty_ = Union(dirty_, dirty); }

  void SendState(const Snapshot& s) {
    if (!open_ || vehicle_) return;
    StateMessage m;
    m.seq = ++seq_;
    m.sim_time = s.sim_time;
    m.pose = s.pose;
    m.speed = s.speed;
    m.gear = s.gear;
    m.scan = s.scan;
    if (s.classes) {
      CellRect rect = dirty_;
      if (full_next_) rect = {0, 0, s.grid_width - 1, s.grid_height - 1};
      if (!rect.empty()) m.grid_patch = ExtractPatch(*s.classes, s.grid_width, rect);
      full_next_ = false;
      dirty_ = {};
    }
    m.tracker = s.tracker;
    m.mode = s.mode;
    m.recording = s.recording;
    m.waypoints = s.waypoints;
    m.external_link = s.external_link;
    m.degraded = s.degraded;
    m.authority = server_.authority.Holds(id_, server_.Now());
    Send(Serialize(m), true);
  }

  void Close() {
    if (closed_) return;
    closed_ = true;
    beast::error_code ec;
    ws_.next_layer().socket().shutdown(tcp::socket::shutdown_both, ec);
    ws_.next_layer().socket().close(ec);
  }

 private:
  void OnRequest(beast::error_code ec) {
    if (ec) return Finish();
    if (!websocket::is_upgrade(request_) || request_.target() != "/sim") {
      return Finish();
    }
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(request_, [self = shared_from_this()](beast::error_code e) {
      if (e) return self->Finish();
      self->open_ = true;
      self->full_next_ = true;
      self->Read();
      if (!self->queue_.empty()) self->WriteNext();
    });
  }

  void Read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return self->Finish();
      const std::string text = beast::buffers_to_string(self->buffer_.data());
      self->buffer_.consume(self->buffer_.size());
      self->Handle(text);
      self->Read();
    });
  }

  void WriteNext() {
    if (!open_ || queue_.empty() || closed_) return;
    ws_.text(true);
    ws_.async_write(asio::buffer(queue_.front()),
                    [self = shared_from_this()](beast::error_code ec, std::size_t) {
                      if (ec) return self->Finish();
                      self->queue_.pop_front();
                      self->WriteNext();
                    });
  }

  void Handle(const std::string& text) {
    const double now = server_.Now();
    if (vehicle_) {
      // The vehicle peer reports its state with state frames.
      try {
        const nlohmann::json j = nlohmann::json::parse(text);
        if (j.value("type", "") == "state") {
          const StateMessage m = ParseStateMessage(text);
          std::lock_guard<std::mutex> lock(server_.shared_mu);
          server_.vehicle_heard = now;
          server_.vehicle_state = ExternalState{m.pose, m.speed, now};
          return;
        }
      } catch (const std::exception&) {
        // Falls through to the client parser for the error frame.
      }
    }
    try {
      const ClientMessage message = ParseClientMessage(text, server_.config.throttle_min);
      std::visit([&](const auto& m) { On(m, now); }, message);
    } catch (const ProtocolError& e) {
      Send(SerializeError(e.what()));
    }
  }

  void On(const CommandMessage& m, double now) {
    if (!server_.authority.Holds(id_, now) && !server_.authority.Request(id_, now)) {
      Send(SerializeError("teleop authority held by another connection"));
      return;
    }
    server_.authority.Touch(id_, now);
    server_.mailbox.Post(id_, ToDriveCommand(m, server_.config.steering_limit), now);
    if (m.record != RecordRequest::kNone || m.mode) {
      std::lock_guard<std::mutex> lock(server_.shared_mu);
      server_.requests.push_back({id_, m.record, m.mode});
    }
  }

  void On(const PingMessage& m, double now) {
    server_.mailbox.Heard(id_, now);
    server_.authority.Touch(id_, now);
    if (vehicle_) {
      std::lock_guard<std::mutex> lock(server_.shared_mu);
      server_.vehicle_heard = now;
    }
    Send(nlohmann::json{{"type", "pong"}, {"seq", m.seq}}.dump());
  }

  void On(const HelloMessage& m, double now) {
    if (m.role != Role::kVehicle) return;
    std::lock_guard<std::mutex> lock(server_.shared_mu);
    if (server_.vehicle && *server_.vehicle != id_) {
      Send(SerializeError("vehicle peer already connected"));
      return;
    }
    vehicle_ = true;
    server_.vehicle = id_;
    server_.vehicle_heard = now;
  }

  void On(const AuthorityMessage& m, double now) {
    if (m.action == AuthorityAction::kRelease) {
      server_.authority.Release(id_);
      server_.mailbox.Close(id_);
      Send(SerializeAuthority(false, false));
      return;
    }
    const bool granted = server_.authority.Request(id_, now);
    Send(SerializeAuthority(granted, !granted));
  }

  void On(const SnapshotRequest&, double) { full_next_ = true; }

  void Finish() {
    if (finished_) return;
    finished_ = true;
    open_ = false;
    Close();
    queue_.clear();
    server_.Remove(id_);
  }

  Impl& server_;
  ConnectionId id_;
  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> request_;
  std::deque<std::string> queue_;
  std::int64_t seq_ = 0;
  CellRect dirty_;
  bool full_next_ = true;
  bool open_ = false;
  bool closed_ = false;
  bool finished_ = false;
  bool vehicle_ = false;
};

void BridgeServer::Impl::Accept() {
  acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
    if (ec) {
      if (running) Accept();
      return;
    }
    const ConnectionId id = next_id++;
    auto session = std::make_shared<Session>(*this, id, std::move(socket));
    sessions.emplace(id, session);
    ++connection_count;
    spdlog::info("bridge: connection {} opened", id);
    session->Run();
    Accept();
  });
}

void BridgeServer::Impl::Tick() {
  ticker.expires_after(std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double>(1.0 / config.stream_rate)));
  ticker.async_wait([this](beast::error_code ec) {
    if (ec || !running) return;
    Broadcast();
    Tick();
  });
}

void BridgeServer::Impl::Broadcast() {
  if (!latest) return;
  for (auto& [id, session] : sessions) session->SendState(*latest);
}

void BridgeServer::Impl::Remove(ConnectionId id) {
  authority.Release(id);
  mailbox.Close(id);
  {
    std::lock_guard<std::mutex> lock(shared_mu);
    if (vehicle == id) {
      vehicle.reset();
      vehicle_state.reset();
    }
  }
  if (sessions.erase(id) > 0) {
    --connection_count;
    spdlog::info("bridge: connection {} closed", id);
  }
}

std::optional<double> BridgeServer::Impl::Deliver(const std::string& payload, double) {
  std::optional<ConnectionId> target;
  {
    std::lock_guard<std::mutex> lock(shared_mu);
    target = vehicle;
  }
  if (!target || !running) return std::nullopt;
  asio::post(io, [this, id = *target, payload] {
    if (auto it = sessions.find(id); it != sessions.end()) it->second->Send(payload);
  });
  return Now();
}

bool BridgeServer::Impl::Alive() const {
  std::lock_guard<std::mutex> lock(shared_mu);
  return running && vehicle && Now() - vehicle_heard <= config.heartbeat;
}

std::optional<ExternalState> BridgeServer::Impl::LatestState() const {
  std::lock_guard<std::mutex> lock(shared_mu);
  return vehicle_state;
}

BridgeServer::BridgeServer(ServerConfig config)
    : impl_(std::make_unique<Impl>(std::move(config))) {}

BridgeServer::~BridgeServer() { Stop(); }

void BridgeServer::Start() {
  if (impl_->running) return;
  beast::error_code ec;
  const auto address = asio::ip::make_address(impl_->config.address, ec);
  if (ec) throw Error(ErrorCode::kInvalidArgument, "bad bind address '" + impl_->config.address + "'");
  const tcp::endpoint endpoint(address, impl_->config.port);
  tcp::acceptor& a = impl_->acceptor;
  a.open(endpoint.protocol(), ec);
  if (!ec) a.set_option(asio::socket_base::reuse_address(true), ec);
  if (!ec) a.bind(endpoint, ec);
  if (!ec) a.listen(asio::socket_base::max_listen_connections, ec);
  if (ec) {
    beast::error_code ignored;
    a.close(ignored);
    throw Error(ErrorCode::kUnavailable, "cannot listen on " + impl_->config.address + ":" +
                                             std::to_string(impl_->config.port) + ": " +
                                             ec.message());
  }
  impl_->running = true;
  impl_->Accept();
  impl_->Tick();
  impl_->thread = std::thread([this] { impl_->io.run(); });
  spdlog::info("bridge: listening on ws://{}:{}/sim", impl_->config.address, port());
}

void BridgeServer::Stop() {
  if (!impl_->running.exchange(false)) return;
  asio::post(impl_->io, [impl = impl_.get()] {
    beast::error_code ec;
    impl->acceptor.close(ec);
    impl->ticker.cancel();
    auto sessions = impl->sessions;
    for (auto& [id, session] : sessions) session->Close();
  });
  if (impl_->thread.joinable()) impl_->thread.join();
  impl_->sessions.clear();
  impl_->connection_count = 0;
}

std::uint16_t BridgeServer::port() const {
  beast::error_code ec;
  const auto endpoint = impl_->acceptor.local_endpoint(ec);
  return ec ? impl_->config.port : endpoint.port();
}

double BridgeServer::Now() const { return impl_->Now(); }

void BridgeServer::Publish(std::shared_ptr<const Snapshot> snapshot) {
  if (!impl_->running) return;
  asio::post(impl_->io, [impl = impl_.get(), snapshot = std::move(snapshot)] {
    for (auto& [id, session] : impl->sessions) session->Accumulate(snapshot->dirty);
    impl->latest = snapshot;
  });
}

DriveCommand BridgeServer::TakeCommand() { return impl_->mailbox.Take(impl_->Now()); }

std::vector<ControlRequest> BridgeServer::TakeRequests() {
  std::lock_guard<std::mutex> lock(impl_->shared_mu);
  std::vector<ControlRequest> out;
  out.swap(impl_->requests);
  return out;
}

void BridgeServer::SendError(ConnectionId connection, const std::string& reason) {
  if (!impl_->running) return;
  asio::post(impl_->io, [impl = impl_.get(), connection, frame = SerializeError(reason)] {
    if (auto it = impl->sessions.find(connection); it != impl->sessions.end()) {
      it->second->Send(frame);
    }
  });
}

std::size_t BridgeServer::connections() const { return impl_->connection_count; }

ExternalTarget& BridgeServer::vehicle_link() { return *impl_; }

}  // namespace twinforge::bridge
