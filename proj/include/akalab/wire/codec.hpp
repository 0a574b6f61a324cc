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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "akalab/wire/messages.hpp"

namespace akalab::wire {

class EncodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DecodeError : public std::runtime_error {
 public:
  DecodeError(std::size_t offset, std::string reason);
  std::size_t offset() const { return offset_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t offset_;
  std::string reason_;
};

inline constexpr std::size_t kLengthPrefixLen = 4;
// version, msg_type, protocol_id, session_id
inline constexpr std::size_t kHeaderLen = 3 + kSessionIdLen;

// Full frame including the 4-byte length. Throws EncodeError when a field
// breaks its invariant (identity too long, share kind wrong for the
// protocol, message kind not valid under the protocol, empty C1).
Bytes encode(const Frame& frame);

// Parses exactly one frame occupying all of `data`.
Frame decode(ByteView data);

// Reads the length prefix and returns the total frame size (prefix
// included). Throws DecodeError when the declared length is out of range.
std::size_t frame_size_from_prefix(ByteView prefix);

}  // namespace akalab::wire
