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

#include "akalab/wire/messages.hpp"

#include <stdexcept>

namespace akalab::wire {

namespace {

constexpr std::string_view kNames[] = {
    "AttachRequest", "SnToHnAttach", "HnChallenge", "SnChallenge", "UeResponse", "SnResult",
    "HnResult",      "ResyncForward", "SnKeyConfirm", "UeKeyConfirm", "M1", "M2",
    "M3",            "M4",           "M5",          "M6",          "M7",         "Notice",
};
static_assert(std::size(kNames) == std::variant_size_v<Message>);

constexpr std::uint8_t kNoticeType = 0x30;

std::uint8_t type_for_index(std::size_t i) {
  if (i < 10) return static_cast<std::uint8_t>(i + 1);
  if (i < 17) return static_cast<std::uint8_t>(i + 7);
  return kNoticeType;
}

}  // namespace

std::string_view protocol_name(ProtocolId p) {
  switch (p) {
    case ProtocolId::baseline:
      return "baseline";
    case ProtocolId::p1:
      return "p1";
    case ProtocolId::p2:
      return "p2";
  }
  return "unknown";
}

ProtocolId parse_protocol(std::string_view name) {
  if (name == "baseline") return ProtocolId::baseline;
  if (name == "p1") return ProtocolId::p1;
  if (name == "p2") return ProtocolId::p2;
  throw std::invalid_argument("unknown protocol: " + std::string(name));
}

ByteView share_bytes(const ChallengeShare& s) {
  return std::visit([](const auto& v) { return ByteView(v); }, s);
}

std::string_view notice_name(NoticeCode c) {
  switch (c) {
    case NoticeCode::complete:
      return "complete";
    case NoticeCode::transient_failure:
      return "transient_failure";
    case NoticeCode::protocol_error:
      return "protocol_error";
    case NoticeCode::mac_failure:
      return "mac_failure";
    case NoticeCode::aborted:
      return "aborted";
  }
  return "unknown";
}

std::uint8_t msg_type(const Message& m) { return type_for_index(m.index()); }

std::string_view message_name(const Message& m) { return kNames[m.index()]; }

std::string_view message_name(std::uint8_t type) {
  for (std::size_t i = 0; i < std::size(kNames); ++i) {
    if (type_for_index(i) == type) return kNames[i];
  }
  return "unknown";
}

bool is_protocol_message(const Message& m) { return !std::holds_alternative<Notice>(m); }

bool carries_anchor_key(const Message& m) {
  return std::holds_alternative<HnChallenge>(m) || std::holds_alternative<M3>(m);
}

}  // namespace akalab::wire
