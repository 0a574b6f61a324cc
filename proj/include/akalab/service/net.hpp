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

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "akalab/crypto/bytes.hpp"

namespace akalab::service {

using Clock = std::chrono::steady_clock;
using Deadline = Clock::time_point;

class NetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Timeout : public NetError {
 public:
  using NetError::NetError;
};

// The peer closed the connection in the middle of a record.
class PeerClosed : public NetError {
 public:
  using NetError::NetError;
};

struct Endpoint {
  std::string host;
  std::uint16_t port = 0;
  std::string str() const;
};

// "host:port"; throws std::invalid_argument.
Endpoint parse_endpoint(std::string_view s);

class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  ~Socket() { close(); }
  Socket(Socket&& o) noexcept : fd_(o.fd_) { o.fd_ = -1; }
  Socket& operator=(Socket&& o) noexcept;
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;

  int fd() const { return fd_; }
  bool valid() const { return fd_ >= 0; }
  void close();
  void shutdown_write();

  void write_all(ByteView data, Deadline deadline);
  // false on clean EOF before the first byte; PeerClosed after it.
  bool read_exact(std::uint8_t* out, std::size_t n, Deadline deadline);
  // Waits until readable. False on timeout.
  bool wait_readable(Deadline deadline) const;

 private:
  int fd_ = -1;
};

Socket connect_to(const Endpoint& ep, Deadline deadline);

class Listener {
 public:
  // Port 0 picks an ephemeral port.
  explicit Listener(const Endpoint& ep);
  std::uint16_t port() const { return port_; }
  // nullopt when nothing arrived before the deadline.
  std::optional<Socket> accept(Deadline deadline);

 private:
  Socket sock_;
  std::uint16_t port_ = 0;
};

// One length-prefixed wire frame. nullopt on clean EOF.
std::optional<Bytes> recv_frame(Socket& s, Deadline deadline);
void send_frame(Socket& s, ByteView frame, Deadline deadline);

inline Deadline deadline_in(std::chrono::milliseconds ms) { return Clock::now() + ms; }

}  // namespace akalab::service
