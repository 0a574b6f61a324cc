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

#include "akalab/crypto/ecies.hpp"

#include <openssl/core_names.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/kdf.h>

#include <memory>

#include "akalab/crypto/derive.hpp"

namespace akalab::crypto {

namespace {

constexpr std::string_view kKdfInfo = "akalab-ecies-kdf";
constexpr std::string_view kMacLabel = "akalab-ecies-mac";

// ANSI X9.63 KDF over SHA-256, 64 bytes out: s1 = left half, s2 = right half.
SharedSecret derive_shared(const Block32& z, OpCounters& ops) {
  ops.hash_ops += 1;
  std::unique_ptr<EVP_KDF, decltype(&EVP_KDF_free)> kdf(EVP_KDF_fetch(nullptr, "X963KDF", nullptr), EVP_KDF_free);
  if (!kdf) throw CryptoError("X963KDF unavailable");
  std::unique_ptr<EVP_KDF_CTX, decltype(&EVP_KDF_CTX_free)> ctx(EVP_KDF_CTX_new(kdf.get()), EVP_KDF_CTX_free);
  if (!ctx) throw CryptoError("EVP_KDF_CTX_new failed");

  char digest[] = "SHA256";
  Block32 secret = z;
  Bytes info(kKdfInfo.begin(), kKdfInfo.end());
  OSSL_PARAM params[] = {
      OSSL_PARAM_construct_utf8_string(OSSL_KDF_PARAM_DIGEST, digest, 0),
      OSSL_PARAM_construct_octet_string(OSSL_KDF_PARAM_KEY, secret.data(), secret.size()),
      OSSL_PARAM_construct_octet_string(OSSL_KDF_PARAM_INFO, info.data(), info.size()),
      OSSL_PARAM_construct_end(),
  };
  std::array<std::uint8_t, 64> out{};
  const int rc = EVP_KDF_derive(ctx.get(), out.data(), out.size(), params);
  secure_wipe(secret);
  if (rc != 1) throw CryptoError("X963KDF derive failed");

  SharedSecret ks;
  std::copy(out.begin(), out.begin() + 32, ks.s1.begin());
  std::copy(out.begin() + 32, out.end(), ks.s2.begin());
  secure_wipe(out);
  return ks;
}

// AES-256-CTR keystream under s1. s1 is single-use per encapsulation, so a
// fixed zero IV never repeats a (key, IV) pair.
Bytes aes_ctr(const Block32& key, ByteView in) {
  std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)> ctx(EVP_CIPHER_CTX_new(), EVP_CIPHER_CTX_free);
  std::array<std::uint8_t, 16> iv{};
  Bytes out(in.size());
  int len = 0;
  if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_ctr(), nullptr, key.data(), iv.data()) != 1 ||
      EVP_EncryptUpdate(ctx.get(), out.data(), &len, in.data(), static_cast<int>(in.size())) != 1) {
    throw CryptoError("AES-CTR failed");
  }
  return out;
}

Tag dem_mac(const Block32& s2, ByteView c1) {
  Bytes msg(kMacLabel.begin(), kMacLabel.end());
  msg.insert(msg.end(), c1.begin(), c1.end());
  Tag tag{};
  unsigned int len = 0;
  if (HMAC(EVP_sha256(), s2.data(), static_cast<int>(s2.size()), msg.data(), msg.size(), tag.data(), &len) ==
          nullptr ||
      len != tag.size()) {
    throw CryptoError("HMAC failed");
  }
  return tag;
}

}  // namespace

SharedSecret::~SharedSecret() { wipe(); }

void SharedSecret::wipe() {
  secure_wipe(s1);
  secure_wipe(s2);
}

Bytes SharedSecret::joined() const { return concat({s1, s2}); }

KeyPair ecies_keygen(CurveId curve, Rng& rng) {
  OpCounters setup;
  Scalar sk = Scalar::random(curve, rng);
  GroupElement pk = mul_generator(sk, setup);
  return KeyPair{std::move(sk), pk};
}

Encapsulation ecies_encap(const GroupElement& pk, Rng& rng, OpCounters& ops) {
  ops.rng_draws += 1;
  return ecies_encap_with(pk, Scalar::random(pk.curve(), rng), ops);
}

Encapsulation ecies_encap_with(const GroupElement& pk, Scalar ephemeral, OpCounters& ops) {
  if (ephemeral.curve() != pk.curve()) throw InvalidPoint("curve mismatch");
  GroupElement c0 = mul_generator(ephemeral, ops);
  Block32 z = mul_point_x(ephemeral, pk, ops);
  SharedSecret ks = derive_shared(z, ops);
  secure_wipe(z);
  return Encapsulation{c0, ks, std::move(ephemeral)};
}

SharedSecret ecies_decap(const Scalar& sk, const GroupElement& c0, OpCounters& ops) {
  Block32 z = mul_point_x(sk, c0, ops);
  SharedSecret ks = derive_shared(z, ops);
  secure_wipe(z);
  return ks;
}

SealedPayload ecies_senc(const SharedSecret& ks, ByteView m, OpCounters& ops) {
  if (m.empty()) throw std::invalid_argument("ecies_senc: empty message");
  SealedPayload out;
  ops.sym_encs += 1;
  out.c1 = aes_ctr(ks.s1, m);
  ops.hash_ops += 1;
  out.mac = dem_mac(ks.s2, out.c1);
  return out;
}

std::optional<Bytes> ecies_sdec(const SharedSecret& ks, ByteView c1, ByteView mac, OpCounters& ops) {
  ops.hash_ops += 1;
  const Tag expected = dem_mac(ks.s2, c1);
  if (!equal_ct(expected, mac)) return std::nullopt;
  ops.sym_decs += 1;
  return aes_ctr(ks.s1, c1);
}

}  // namespace akalab::crypto
