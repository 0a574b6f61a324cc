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

#include "akalab/crypto/derive.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/sha.h>

#include <stdexcept>

#include "akalab/crypto/group.hpp"

namespace akalab::crypto {

Bytes encode_fields(std::string_view label, Fields fields) {
  Bytes out(label.begin(), label.end());
  for (auto field : fields) {
    if (field.size() > 0xffff) throw std::length_error("derivation field longer than 65535 bytes");
    out.push_back(static_cast<std::uint8_t>(field.size() >> 8));
    out.push_back(static_cast<std::uint8_t>(field.size()));
    out.insert(out.end(), field.begin(), field.end());
  }
  return out;
}

namespace {

Block32 hmac_sha256(ByteView key, ByteView msg) {
  Block32 out{};
  unsigned int len = 0;
  if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), msg.data(), msg.size(), out.data(), &len) ==
          nullptr ||
      len != out.size()) {
    throw CryptoError("HMAC failed");
  }
  return out;
}

}  // namespace

std::string_view ftag_label(FTag tag) {
  switch (tag) {
    case FTag::f1:
      return "akalab-f1";
    case FTag::f2:
      return "akalab-f2";
    case FTag::f3:
      return "akalab-f3";
    case FTag::f4:
      return "akalab-f4";
    case FTag::f5:
      return "akalab-f5";
    case FTag::f1_star:
      return "akalab-f1*";
    case FTag::f5_star:
      return "akalab-f5*";
  }
  throw std::invalid_argument("unknown f tag");
}

std::size_t f_output_length(FTag tag) {
  return (tag == FTag::f5 || tag == FTag::f5_star) ? kAkLen : kBlockLen;
}

Bytes f(FTag tag, ByteView key, Fields inputs, OpCounters& ops) {
  ops.hash_ops += 1;
  const Block32 full = hmac_sha256(key, encode_fields(ftag_label(tag), inputs));
  return Bytes(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(f_output_length(tag)));
}

Key kdf_anchor(Fields inputs, OpCounters& ops) {
  if (inputs.size() == 0) throw std::invalid_argument("kdf_anchor: no inputs");
  ops.hash_ops += 1;
  auto it = inputs.begin();
  ByteView key = *it++;
  Bytes msg(std::string_view("akalab-kseaf").begin(), std::string_view("akalab-kseaf").end());
  for (; it != inputs.end(); ++it) {
    if (it->size() > 0xffff) throw std::length_error("derivation field longer than 65535 bytes");
    msg.push_back(static_cast<std::uint8_t>(it->size() >> 8));
    msg.push_back(static_cast<std::uint8_t>(it->size()));
    msg.insert(msg.end(), it->begin(), it->end());
  }
  return hmac_sha256(key, msg);
}

Block32 hash_fields(std::string_view label, Fields fields, OpCounters& ops) {
  ops.hash_ops += 1;
  const Bytes msg = encode_fields(label, fields);
  Block32 out{};
  SHA256(msg.data(), msg.size(), out.data());
  return out;
}

Tag mac_fields(ByteView key, std::string_view label, Fields fields, OpCounters& ops) {
  ops.hash_ops += 1;
  return hmac_sha256(key, encode_fields(label, fields));
}

std::string key_fingerprint(ByteView key) {
  const Bytes msg = encode_fields("akalab-fingerprint", {key});
  Block32 out{};
  SHA256(msg.data(), msg.size(), out.data());
  return to_hex(ByteView(out.data(), 8));
}

Bytes xor_bytes(ByteView a, ByteView b, OpCounters& ops) {
  if (a.size() != b.size()) throw std::invalid_argument("xor_bytes: length mismatch");
  ops.xors += 1;
  Bytes out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

}  // namespace akalab::crypto
