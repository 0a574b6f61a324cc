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

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace akalab {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline constexpr std::size_t kBlockLen = 32;
using Block32 = std::array<std::uint8_t, kBlockLen>;

// Nonces, tags and derived keys all share the 32-byte width.
using Nonce = Block32;
using Tag = Block32;
using Key = Block32;

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

std::string to_hex(ByteView data);

// Throws std::invalid_argument on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

Bytes concat(std::initializer_list<ByteView> parts);

template <std::size_t N>
std::array<std::uint8_t, N> to_array(ByteView data) {
  if (data.size() != N) {
    throw std::invalid_argument("to_array: expected " + std::to_string(N) + " bytes, got " +
                                std::to_string(data.size()));
  }
  std::array<std::uint8_t, N> out{};
  std::copy(data.begin(), data.end(), out.begin());
  return out;
}

// Length-independent comparison.
bool equal_ct(ByteView a, ByteView b);

void secure_wipe(std::span<std::uint8_t> data);

template <std::size_t N>
bool is_all_zero(const std::array<std::uint8_t, N>& a) {
  std::uint8_t acc = 0;
  for (auto b : a) acc |= b;
  return acc == 0;
}

}  // namespace akalab
