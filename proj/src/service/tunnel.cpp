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

#include "akalab/service/tunnel.hpp"

#include <openssl/core_names.h>
#include <openssl/evp.h>
#include <openssl/kdf.h>
#include <openssl/rand.h>

#include <memory>

#include "akalab/wire/codec.hpp"
#include "akalab/wire/messages.hpp"

namespace akalab::service {

namespace {

constexpr std::uint8_t kMagic[4] = {'A', 'K', 'T', '1'};
constexpr std::size_t kNonceLen = 32;
constexpr std::size_t kTagLen = 16;
constexpr std::size_t kMaxRecord = wire::kMaxFrameLen + wire::kLengthPrefixLen + kTagLen;
constexpr std::string_view kHello = "akalab-tunnel-hello";

struct CtxFree {
  void operator()(EVP_CIPHER_CTX* c) const { EVP_CIPHER_CTX_free(c); }
  void operator()(EVP_KDF_CTX* c) const { EVP_KDF_CTX_free(c); }
};

std::array<std::uint8_t, 32> hkdf(const Psk& psk, ByteView salt, std::string_view info) {
  EVP_KDF* kdf = EVP_KDF_fetch(nullptr, "HKDF", nullptr);
  if (!kdf) throw TunnelError("HKDF unavailable");
  std::unique_ptr<EVP_KDF_CTX, CtxFree> ctx(EVP_KDF_CTX_new(kdf));
  EVP_KDF_free(kdf);
  char digest[] = "SHA256";
  OSSL_PARAM params[] = {
      OSSL_PARAM_construct_utf8_string(OSSL_KDF_PARAM_DIGEST, digest, 0),
      OSSL_PARAM_construct_octet_string(OSSL_KDF_PARAM_KEY, const_cast<std::uint8_t*>(psk.data()), psk.size()),
      OSSL_PARAM_construct_octet_string(OSSL_KDF_PARAM_SALT, const_cast<std::uint8_t*>(salt.data()), salt.size()),
      OSSL_PARAM_construct_octet_string(OSSL_KDF_PARAM_INFO, const_cast<char*>(info.data()), info.size()),
      OSSL_PARAM_construct_end()};
  std::array<std::uint8_t, 32> out{};
  if (!ctx || EVP_KDF_derive(ctx.get(), out.data(), out.size(), params) != 1) throw TunnelError("HKDF failed");
  return out;
}

std::array<std::uint8_t, 12> gcm_nonce(std::uint64_t seq) {
  std::array<std::uint8_t, 12> iv{};
  for (int i = 0; i < 8; ++i) iv[4 + i] = static_cast<std::uint8_t>(seq >> (8 * (7 - i)));
  return iv;
}

std::array<std::uint8_t, 4> be32(std::size_t v) {
  return {static_cast<std::uint8_t>(v >> 24), static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 8),
          static_cast<std::uint8_t>(v)};
}

Bytes seal(const std::array<std::uint8_t, 32>& key, std::uint64_t seq, ByteView plain) {
  const auto len = be32(plain.size() + kTagLen);
  const auto iv = gcm_nonce(seq);
  std::unique_ptr<EVP_CIPHER_CTX, CtxFree> ctx(EVP_CIPHER_CTX_new());
  Bytes out(len.begin(), len.end());
  out.resize(4 + plain.size() + kTagLen);
  int n = 0;
  if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(), iv.data()) != 1 ||
      EVP_EncryptUpdate(ctx.get(), nullptr, &n, len.data(), static_cast<int>(len.size())) != 1 ||
      EVP_EncryptUpdate(ctx.get(), out.data() + 4, &n, plain.data(), static_cast<int>(plain.size())) != 1 ||
      EVP_EncryptFinal_ex(ctx.get(), out.data() + 4 + n, &n) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kTagLen, out.data() + 4 + plain.size()) != 1) {
    throw TunnelError("AEAD seal failed");
  }
  return out;
}

std::optional<Bytes> open(const std::array<std::uint8_t, 32>& key, std::uint64_t seq, ByteView len,
                          ByteView body) {
  if (body.size() < kTagLen) return std::nullopt;
  const auto iv = gcm_nonce(seq);
  const std::size_t ct_len = body.size() - kTagLen;
  std::unique_ptr<EVP_CIPHER_CTX, CtxFree> ctx(EVP_CIPHER_CTX_new());
  Bytes plain(ct_len);
  int n = 0;
  if (!ctx || EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(), iv.data()) != 1 ||
      EVP_DecryptUpdate(ctx.get(), nullptr, &n, len.data(), static_cast<int>(len.size())) != 1 ||
      EVP_DecryptUpdate(ctx.get(), plain.data(), &n, body.data(), static_cast<int>(ct_len)) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kTagLen, const_cast<std::uint8_t*>(body.data() + ct_len)) !=
          1) {
    throw TunnelError("AEAD setup failed");
  }
  if (EVP_DecryptFinal_ex(ctx.get(), plain.data() + n, &n) != 1) return std::nullopt;
  return plain;
}

}  // namespace

Tunnel::~Tunnel() {
  secure_wipe(send_key_);
  secure_wipe(recv_key_);
}

void Tunnel::derive(const Psk& psk, ByteView salt, bool is_client) {
  const auto c2s = hkdf(psk, salt, "akalab-tunnel c2s");
  const auto s2c = hkdf(psk, salt, "akalab-tunnel s2c");
  send_key_ = is_client ? c2s : s2c;
  recv_key_ = is_client ? s2c : c2s;
}

Tunnel Tunnel::client(Socket sock, const Psk& psk, Deadline deadline) {
  Tunnel t(std::move(sock));
  Bytes hello(kMagic, kMagic + 4);
  hello.resize(4 + kNonceLen);
  if (RAND_bytes(hello.data() + 4, kNonceLen) != 1) throw TunnelError("RAND_bytes failed");
  t.sock_.write_all(hello, deadline);
  std::array<std::uint8_t, kNonceLen> server_nonce{};
  if (!t.sock_.read_exact(server_nonce.data(), server_nonce.size(), deadline)) {
    throw TunnelError("server closed during handshake");
  }
  const Bytes salt = concat({ByteView(hello).subspan(4), server_nonce});
  t.derive(psk, salt, true);
  t.send(as_bytes(kHello), deadline);
  const auto reply = t.recv(deadline);
  if (!reply || !std::equal(reply->begin(), reply->end(), kHello.begin(), kHello.end())) {
    throw TunnelError("server failed the key check");
  }
  return t;
}

Tunnel Tunnel::server(Socket sock, const Psk& psk, Deadline deadline) {
  Tunnel t(std::move(sock));
  std::array<std::uint8_t, 4 + kNonceLen> hello{};
  if (!t.sock_.read_exact(hello.data(), hello.size(), deadline)) throw TunnelError("client closed during handshake");
  if (!std::equal(kMagic, kMagic + 4, hello.begin())) throw TunnelError("bad tunnel magic");
  std::array<std::uint8_t, kNonceLen> nonce{};
  if (RAND_bytes(nonce.data(), nonce.size()) != 1) throw TunnelError("RAND_bytes failed");
  t.sock_.write_all(nonce, deadline);
  const Bytes salt = concat({ByteView(hello).subspan(4), nonce});
  t.derive(psk, salt, false);
  const auto first = t.recv(deadline);
  if (!first || !std::equal(first->begin(), first->end(), kHello.begin(), kHello.end())) {
    throw TunnelError("client failed the key check");
  }
  t.send(as_bytes(kHello), deadline);
  return t;
}

void Tunnel::send(ByteView plaintext, Deadline deadline) {
  if (plaintext.size() + kTagLen > kMaxRecord) throw TunnelError("record too large");
  sock_.write_all(seal(send_key_, send_seq_++, plaintext), deadline);
}

std::optional<Bytes> Tunnel::recv(Deadline deadline) {
  std::array<std::uint8_t, 4> len{};
  if (!sock_.read_exact(len.data(), len.size(), deadline)) return std::nullopt;
  const std::size_t n = (std::size_t{len[0]} << 24) | (std::size_t{len[1]} << 16) | (std::size_t{len[2]} << 8) | len[3];
  if (n < kTagLen || n > kMaxRecord) throw TunnelError("bad record length");
  Bytes body(n);
  if (!sock_.read_exact(body.data(), n, deadline)) throw PeerClosed("closed inside a record");
  auto plain = open(recv_key_, recv_seq_++, len, body);
  if (!plain) throw TunnelError("record failed authentication");
  return plain;
}

}  // namespace akalab::service
