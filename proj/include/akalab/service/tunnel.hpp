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

#include <optional>

#include "akalab/service/net.hpp"

namespace akalab::service {

using Psk = std::array<std::uint8_t, 32>;

class TunnelError : public NetError {
 public:
  using NetError::NetError;
};

// Pre-shared-key AEAD tunnel for the SN-HN link.
//
// Handshake: the client sends "AKT1" and a 32-byte nonce, the server replies
// with its own nonce. Each direction derives an AES-256-GCM key with
// HKDF-SHA256(psk, salt = client nonce || server nonce). Both sides then
// exchange an encrypted hello, so a peer without the PSK fails before any
// frame moves. Records are len(4) || ciphertext || tag(16); the nonce is a
// per-direction counter and the length is authenticated.
class Tunnel {
 public:
  static Tunnel client(Socket sock, const Psk& psk, Deadline deadline);
  static Tunnel server(Socket sock, const Psk& psk, Deadline deadline);

  Tunnel(Tunnel&&) noexcept = default;
  Tunnel& operator=(Tunnel&&) noexcept = default;
  ~Tunnel();

  void send(ByteView plaintext, Deadline deadline);
  // nullopt on clean EOF. Throws TunnelError on authentication failure.
  std::optional<Bytes> recv(Deadline deadline);

  Socket& socket() { return sock_; }

 private:
  Tunnel(Socket sock) : sock_(std::move(sock)) {}
  void derive(const Psk& psk, ByteView salt, bool is_client);

  Socket sock_;
  std::array<std::uint8_t, 32> send_key_{};
  std::array<std::uint8_t, 32> recv_key_{};
  std::uint64_t send_seq_ = 0;
  std::uint64_t recv_seq_ = 0;
};

}  // namespace akalab::service
