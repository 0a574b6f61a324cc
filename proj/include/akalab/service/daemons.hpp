// Copyright 2026 The akalab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <atomic>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>

#include "akalab/service/config.hpp"

namespace akalab::service {

// Reads AKALAB_LOG (trace, debug, info, warn, error, off). Default: info.
void init_logging(std::string_view default_level = "info");

// Accept loop plus one thread per connection.
class Server {
 public:
  virtual ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  void start();
  // Stops accepting, then waits for in-flight sessions.
  void stop();
  std::uint16_t port() const { return listener_->port(); }
  Endpoint endpoint() const;
  std::uint64_t sessions() const { return sessions_; }

 protected:
  Server(const Endpoint& listen, std::chrono::milliseconds timeout);
  virtual void handle(Socket s, std::uint64_t index) = 0;
  std::chrono::milliseconds timeout_;

 private:
  void accept_loop();
  void reap(bool all);

  std::string host_;
  std::unique_ptr<Listener> listener_;
  std::atomic<bool> stop_{false};
  std::atomic<std::uint64_t> sessions_{0};
  std::thread acceptor_;
  struct Worker {
    std::thread t;
    std::shared_ptr<std::atomic<bool>> done;
  };
  std::mutex workers_mu_;
  std::list<Worker> workers_;
};

struct HnMaterials {
  crypto::KeyPair keys;
  std::vector<Subscriber> subscribers;
  Psk psk{};
};

// Loads sk_hn, psk and provisioning; ConfigError on a duplicate SUPI.
HnMaterials load_hn_materials(const EndpointConfig& cfg);

// Home network: one tunnel connection per SN session. Serves every protocol
// id it receives. Baseline SQNs persist to `sqn_state` after each session.
class HnDaemon final : public Server {
 public:
  HnDaemon(const EndpointConfig& cfg, HnMaterials materials, std::optional<std::uint64_t> seed = {});
  ~HnDaemon() override { stop(); }
  aka::HnContext& context() { return ctx_; }

 private:
  void handle(Socket s, std::uint64_t index) override;
  void persist();

  EndpointConfig cfg_;
  Psk psk_;
  aka::HnContext ctx_;
  std::optional<std::uint64_t> seed_;
  std::mutex persist_mu_;
};

// Serving network: terminates UE connections, relays to the HN over the
// tunnel. K_SEAF-bearing messages are refused on the UE socket.
class SnDaemon final : public Server {
 public:
  SnDaemon(const EndpointConfig& cfg, Psk psk, std::optional<std::uint64_t> seed = {},
           std::optional<fs::path> capture = {});
  ~SnDaemon() override { stop(); }

 private:
  void handle(Socket s, std::uint64_t index) override;
  void record(ByteView frame);

  EndpointConfig cfg_;
  Psk psk_;
  std::optional<std::uint64_t> seed_;
  std::optional<fs::path> capture_;
  std::mutex capture_mu_;
};

enum class AbortKind : std::uint8_t { none, local, remote, transient, timeout };
std::string_view abort_name(AbortKind a);

struct UeReport {
  wire::ProtocolId protocol = wire::ProtocolId::p1;
  std::string supi;
  aka::Outcome outcome = aka::Outcome::pending;
  AbortKind abort = AbortKind::none;
  std::string reason;
  std::optional<std::uint32_t> messages;  // SN-reported protocol frames
  std::size_t socket_frames = 0;          // frames sent or received by the UE
  crypto::OpCounters ops;
  std::optional<std::string> fingerprint;
  std::size_t attempts = 0;

  // 0 complete, 2 local abort, 3 remote abort, 4 transient failure, 5 timeout.
  int exit_code() const;
  std::string render() const;
};

struct UeRunOptions {
  std::string supi;
  std::optional<std::uint64_t> seed;
  int retries = 0;
  std::chrono::milliseconds retry_delay{250};
};

// One full authentication against the configured SN. Config problems throw
// ConfigError; network outcomes are reported, not thrown.
UeReport run_ue_client(const EndpointConfig& cfg, const UeRunOptions& opts);

}  // namespace akalab::service
