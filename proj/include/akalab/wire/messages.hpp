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

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "akalab/crypto/bytes.hpp"

namespace akalab::wire {

enum class ProtocolId : std::uint8_t { baseline = 0, p1 = 1, p2 = 2 };

std::string_view protocol_name(ProtocolId p);
// Accepts "baseline", "p1", "p2".
ProtocolId parse_protocol(std::string_view name);

inline constexpr std::uint8_t kWireVersion = 1;
inline constexpr std::size_t kSessionIdLen = 16;
inline constexpr std::size_t kPointLen = 33;
inline constexpr std::size_t kSqnLen = 6;
inline constexpr std::size_t kMaxIdentityLen = 64;
inline constexpr std::size_t kMaxFrameLen = 1 << 16;

using SessionId = std::array<std::uint8_t, kSessionIdLen>;
// Compressed point as carried on the wire. Curve validation happens at the
// state machines, so a forged encoding still parses.
using PointBytes = std::array<std::uint8_t, kPointLen>;
using Sqn = std::array<std::uint8_t, kSqnLen>;

struct Suci {
  PointBytes c0{};
  Bytes c1;
  Tag mac{};
  bool operator==(const Suci&) const = default;
};

struct Autn {
  Sqn conc{};
  Tag mac{};
  bool operator==(const Autn&) const = default;
};

// HN challenge share: a nonce under protocol 1, a DH point under protocol 2.
using ChallengeShare = std::variant<Nonce, PointBytes>;

ByteView share_bytes(const ChallengeShare& s);

// --- baseline ---

struct AttachRequest {
  Suci suci;
  std::string id_hn;
  bool operator==(const AttachRequest&) const = default;
};

struct SnToHnAttach {
  Suci suci;
  std::string id_hn;
  std::string id_sn;
  bool operator==(const SnToHnAttach&) const = default;
};

struct HnChallenge {
  Nonce r{};
  Autn autn;
  Tag hxres{};
  Key kseaf{};
  bool operator==(const HnChallenge&) const = default;
};

struct SnChallenge {
  Nonce r{};
  Autn autn;
  bool operator==(const SnChallenge&) const = default;
};

enum class ResponseKind : std::uint8_t { res = 1, mac_failure = 2, sync_failure = 3 };

struct UeResponse {
  ResponseKind kind = ResponseKind::res;
  Block32 res{};     // kind == res
  Autn autn_star{};  // kind == sync_failure
  bool operator==(const UeResponse&) const = default;
};

struct SnResult {
  Block32 res{};
  bool operator==(const SnResult&) const = default;
};

struct HnResult {
  std::string supi;
  bool operator==(const HnResult&) const = default;
};

struct ResyncForward {
  Autn autn_star;
  Nonce r{};
  Suci suci;
  bool operator==(const ResyncForward&) const = default;
};

struct SnKeyConfirm {
  Tag mac{};
  bool operator==(const SnKeyConfirm&) const = default;
};

struct UeKeyConfirm {
  Tag mac{};
  bool operator==(const UeKeyConfirm&) const = default;
};

// --- protocols 1 and 2 ---

struct M1 {
  Suci suci;
  Tag mac{};
  std::string id_hn;
  bool operator==(const M1&) const = default;
};

struct M2 {
  Suci suci;
  Tag mac{};
  std::string id_hn;
  std::string id_sn;
  bool operator==(const M2&) const = default;
};

struct M3 {
  Tag hxres_star{};
  Tag mac_star{};
  Nonce xr{};
  ChallengeShare share;
  Key kseaf{};
  bool operator==(const M3&) const = default;
};

struct M4 {
  Tag mac_star{};
  ChallengeShare share;
  std::string id_sn;
  bool operator==(const M4&) const = default;
};

struct M5 {
  Tag kcmac{};
  Tag res_star{};
  std::string id_sn;
  bool operator==(const M5&) const = default;
};

struct M6 {
  Tag kcmac{};
  Tag res_star{};
  ChallengeShare share;
  bool operator==(const M6&) const = default;
};

struct M7 {
  std::string supi;
  Suci suci;
  bool operator==(const M7&) const = default;
};

// --- control ---

enum class NoticeCode : std::uint8_t {
  complete = 1,           // value = protocol frames exchanged
  transient_failure = 2,  // upstream unreachable
  protocol_error = 3,     // malformed or unexpected frame
  mac_failure = 4,        // HN rejected the subscriber MAC
  aborted = 5,            // session ended without a key
};

std::string_view notice_name(NoticeCode c);

struct Notice {
  NoticeCode code = NoticeCode::complete;
  std::uint32_t value = 0;
  bool operator==(const Notice&) const = default;
};

using Message = std::variant<AttachRequest, SnToHnAttach, HnChallenge, SnChallenge, UeResponse, SnResult,
                             HnResult, ResyncForward, SnKeyConfirm, UeKeyConfirm, M1, M2, M3, M4, M5, M6, M7,
                             Notice>;

// On-wire msg_type byte.
std::uint8_t msg_type(const Message& m);
std::string_view message_name(const Message& m);
std::string_view message_name(std::uint8_t type);

// Notices are control traffic; everything else is counted as a protocol message.
bool is_protocol_message(const Message& m);

// Frames that carry an anchor key and must stay on the SN-HN link.
bool carries_anchor_key(const Message& m);

struct Frame {
  std::uint8_t version = kWireVersion;
  ProtocolId protocol = ProtocolId::baseline;
  SessionId session{};
  Message msg;
  bool operator==(const Frame&) const = default;
};

}  // namespace akalab::wire
