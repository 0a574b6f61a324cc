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

#include "akalab/service/net.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>

#include "akalab/wire/codec.hpp"

namespace akalab::service {

namespace {

int remaining_ms(Deadline d) {
  const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(d - Clock::now()).count();
  return left <= 0 ? 0 : static_cast<int>(std::min<long long>(left, 1 << 30));
}

bool wait_for(int fd, short events, Deadline d) {
  for (;;) {
    pollfd p{fd, events, 0};
    const int rc = ::poll(&p, 1, remaining_ms(d));
    if (rc > 0) return true;
    if (rc == 0) return false;
    if (errno != EINTR) throw NetError(std::string("poll: ") + std::strerror(errno));
  }
}

std::string errno_text(const char* what) { return std::string(what) + ": " + std::strerror(errno); }

sockaddr_in resolve(const Endpoint& ep) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string host = ep.host.empty() ? "0.0.0.0" : ep.host;
  if (const int rc = ::getaddrinfo(host.c_str(), nullptr, &hints, &res); rc != 0 || !res) {
    throw NetError("cannot resolve " + host + ": " + ::gai_strerror(rc));
  }
  sockaddr_in addr{};
  std::memcpy(&addr, res->ai_addr, sizeof addr);
  ::freeaddrinfo(res);
  addr.sin_port = htons(ep.port);
  return addr;
}

}  // namespace

std::string Endpoint::str() const { return host + ":" + std::to_string(port); }

Endpoint parse_endpoint(std::string_view s) {
  const auto colon = s.rfind(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("expected host:port, got '" + std::string(s) + "'");
  Endpoint ep{std::string(s.substr(0, colon)), 0};
  const auto port = s.substr(colon + 1);
  unsigned v = 0;
  const auto [end, ec] = std::from_chars(port.data(), port.data() + port.size(), v);
  if (ec != std::errc{} || end != port.data() + port.size() || v > 65535) {
    throw std::invalid_argument("bad port in '" + std::string(s) + "'");
  }
  ep.port = static_cast<std::uint16_t>(v);
  return ep;
}

Socket& Socket::operator=(Socket&& o) noexcept {
  if (this != &o) {
    close();
    fd_ = o.fd_;
    o.fd_ = -1;
  }
  return *this;
}

void Socket::close() {
  if (fd_ >= 0) ::close(fd_);
  fd_ = -1;
}

void Socket::shutdown_write() {
  if (fd_ >= 0) ::shutdown(fd_, SHUT_WR);
}

bool Socket::wait_readable(Deadline deadline) const { return wait_for(fd_, POLLIN, deadline); }

void Socket::write_all(ByteView data, Deadline deadline) {
  std::size_t off = 0;
  while (off < data.size()) {
    if (!wait_for(fd_, POLLOUT, deadline)) throw Timeout("write timed out");
    const ssize_t n = ::send(fd_, data.data() + off, data.size() - off, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      throw NetError(errno_text("send"));
    }
    off += static_cast<std::size_t>(n);
  }
}

bool Socket::read_exact(std::uint8_t* out, std::size_t n, Deadline deadline) {
  std::size_t off = 0;
  while (off < n) {
    if (!wait_for(fd_, POLLIN, deadline)) throw Timeout("read timed out");
    const ssize_t got = ::recv(fd_, out + off, n - off, 0);
    if (got < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      throw NetError(errno_text("recv"));
    }
    if (got == 0) {
      if (off == 0) return false;
      throw PeerClosed("connection closed mid-record");
    }
    off += static_cast<std::size_t>(got);
  }
  return true;
}

Socket connect_to(const Endpoint& ep, Deadline deadline) {
  const sockaddr_in addr = resolve(ep);
  Socket s(::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC | SOCK_NONBLOCK, 0));
  if (!s.valid()) throw NetError(errno_text("socket"));
  const int one = 1;
  ::setsockopt(s.fd(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  if (::connect(s.fd(), reinterpret_cast<const sockaddr*>(&addr), sizeof addr) < 0) {
    if (errno != EINPROGRESS) throw NetError("connect " + ep.str() + ": " + std::strerror(errno));
    if (!wait_for(s.fd(), POLLOUT, deadline)) throw Timeout("connect " + ep.str() + " timed out");
    int err = 0;
    socklen_t len = sizeof err;
    ::getsockopt(s.fd(), SOL_SOCKET, SO_ERROR, &err, &len);
    if (err != 0) throw NetError("connect " + ep.str() + ": " + std::strerror(err));
  }
  return s;
}

Listener::Listener(const Endpoint& ep) {
  sockaddr_in addr = resolve(ep);
  sock_ = Socket(::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC | SOCK_NONBLOCK, 0));
  if (!sock_.valid()) throw NetError(errno_text("socket"));
  const int one = 1;
  ::setsockopt(sock_.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  if (::bind(sock_.fd(), reinterpret_cast<const sockaddr*>(&addr), sizeof addr) < 0) {
    throw NetError("bind " + ep.str() + ": " + std::strerror(errno));
  }
  if (::listen(sock_.fd(), 256) < 0) throw NetError(errno_text("listen"));
  socklen_t len = sizeof addr;
  ::getsockname(sock_.fd(), reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

std::optional<Socket> Listener::accept(Deadline deadline) {
  if (!wait_for(sock_.fd(), POLLIN, deadline)) return std::nullopt;
  const int fd = ::accept4(sock_.fd(), nullptr, nullptr, SOCK_CLOEXEC | SOCK_NONBLOCK);
  if (fd < 0) {
    if (errno == EAGAIN || errno == EINTR || errno == ECONNABORTED) return std::nullopt;
    throw NetError(errno_text("accept"));
  }
  const int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  return Socket(fd);
}

std::optional<Bytes> recv_frame(Socket& s, Deadline deadline) {
  Bytes frame(wire::kLengthPrefixLen);
  if (!s.read_exact(frame.data(), frame.size(), deadline)) return std::nullopt;
  const std::size_t total = wire::frame_size_from_prefix(frame);
  frame.resize(total);
  if (!s.read_exact(frame.data() + wire::kLengthPrefixLen, total - wire::kLengthPrefixLen, deadline)) {
    throw PeerClosed("connection closed after length prefix");
  }
  return frame;
}

void send_frame(Socket& s, ByteView frame, Deadline deadline) { s.write_all(frame, deadline); }

}  // namespace akalab::service
