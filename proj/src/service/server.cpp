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

#include <spdlog/sinks/stdout_color_sinks.h>

#include <cstdlib>
#include <fstream>

#include "internal.hpp"

namespace akalab::service {

void init_logging(std::string_view default_level) {
  auto logger = spdlog::get("akalab");
  if (!logger) {
    logger = spdlog::stderr_color_mt("akalab");
    spdlog::set_default_logger(logger);
  }
  const char* env = std::getenv("AKALAB_LOG");
  const std::string level = env && *env ? env : std::string(default_level);
  spdlog::set_level(spdlog::level::from_str(level));
  spdlog::set_pattern("%H:%M:%S.%e %^%l%$ [%t] %v");
}

namespace detail {

void keylog(std::string_view role, const wire::SessionId& sid, const Key& k) {
  static std::mutex mu;
  const char* path = std::getenv("AKALAB_KEYLOG");
  if (!path || !*path) return;
  std::lock_guard lock(mu);
  std::ofstream out(path, std::ios::app);
  out << role << ' ' << to_hex(sid) << ' ' << to_hex(k) << '\n';
}

}  // namespace detail

Server::Server(const Endpoint& listen, std::chrono::milliseconds timeout)
    : timeout_(timeout), host_(listen.host), listener_(std::make_unique<Listener>(listen)) {}

Server::~Server() { stop(); }

Endpoint Server::endpoint() const { return {host_.empty() ? "0.0.0.0" : host_, port()}; }

void Server::start() {
  if (acceptor_.joinable()) return;
  stop_ = false;
  acceptor_ = std::thread([this] { accept_loop(); });
}

void Server::stop() {
  stop_ = true;
  if (acceptor_.joinable()) acceptor_.join();
  reap(true);
}

void Server::reap(bool all) {
  std::lock_guard lock(workers_mu_);
  for (auto it = workers_.begin(); it != workers_.end();) {
    if (all || it->done->load()) {
      it->t.join();
      it = workers_.erase(it);
    } else {
      ++it;
    }
  }
}

void Server::accept_loop() {
  while (!stop_) {
    std::optional<Socket> s;
    try {
      s = listener_->accept(deadline_in(std::chrono::milliseconds(100)));
    } catch (const NetError& e) {
      spdlog::warn("accept: {}", e.what());
      continue;
    }
    reap(false);
    if (!s) continue;
    const std::uint64_t index = sessions_++;
    auto done = std::make_shared<std::atomic<bool>>(false);
    std::lock_guard lock(workers_mu_);
    workers_.push_back({std::thread([this, sock = std::move(*s), index, done]() mutable {
                          try {
                            handle(std::move(sock), index);
                          } catch (const std::exception& e) {
                            spdlog::error("session {}: {}", index, e.what());
                          }
                          *done = true;
                        }),
                        done});
  }
}

std::string_view abort_name(AbortKind a) {
  switch (a) {
    case AbortKind::none:
      return "none";
    case AbortKind::local:
      return "local";
    case AbortKind::remote:
      return "remote";
    case AbortKind::transient:
      return "transient";
    case AbortKind::timeout:
      return "timeout";
  }
  return "?";
}

}  // namespace akalab::service
