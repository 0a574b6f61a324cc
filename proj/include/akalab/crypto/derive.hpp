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

#include <initializer_list>
#include <string_view>

#include "akalab/crypto/bytes.hpp"
#include "akalab/crypto/counters.hpp"

namespace akalab::crypto {

// Ordered derivation inputs. Each field is framed with a 2-byte big-endian
// length before hashing, so ("ab","c") and ("a","bc") never collide.
using Fields = std::initializer_list<ByteView>;

// Throws std::length_error for a field longer than 65535 bytes.
Bytes encode_fields(std::string_view label, Fields fields);

enum class FTag : std::uint8_t { f1, f2, f3, f4, f5, f1_star, f5_star };

std::string_view ftag_label(FTag tag);

inline constexpr std::size_t kAkLen = 6;

// 6 for f5/f5*, 32 otherwise.
std::size_t f_output_length(FTag tag);

/// The f-family: HMAC-SHA-256 keyed by `key` over a per-tag label and the
/// framed inputs, truncated to f_output_length(tag). One hash op.
Bytes f(FTag tag, ByteView key, Fields inputs, OpCounters& ops);

/// Anchor-key derivation: the first input keys an HMAC over the remaining
/// framed inputs. One hash op.
Key kdf_anchor(Fields inputs, OpCounters& ops);

/// Plain SHA-256 over a label and framed fields. One hash op.
Block32 hash_fields(std::string_view label, Fields fields, OpCounters& ops);

/// HMAC-SHA-256 keyed by `key` over a label and framed fields. One hash op.
Tag mac_fields(ByteView key, std::string_view label, Fields fields, OpCounters& ops);

/// Short public fingerprint of a key for logs: 8 bytes of a labelled hash.
/// Not counted.
std::string key_fingerprint(ByteView key);

/// XOR of equal-length byte strings. One xor op.
Bytes xor_bytes(ByteView a, ByteView b, OpCounters& ops);

}  // namespace akalab::crypto
