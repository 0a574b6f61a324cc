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

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>

#include "akalab/crypto/bytes.hpp"

namespace akalab::crypto {

/// Random source for every protocol party.
///
/// `system()` reads the OS CSPRNG. `seeded()` is a ChaCha20 keystream keyed
/// from (seed, stream label, index); two instances built from the same triple
/// produce the same bytes, which is what makes simulator runs and
/// `--seed` service runs reproducible.
class Rng {
 public:
  static Rng system();
  static Rng seeded(std::uint64_t seed, std::string_view stream, std::uint64_t index = 0);

  Rng(Rng&&) noexcept;
  Rng& operator=(Rng&&) noexcept;
  ~Rng();

  void fill(std::span<std::uint8_t> out);

  template <std::size_t N>
  std::array<std::uint8_t, N> bytes() {
    std::array<std::uint8_t, N> out{};
    fill(out);
    return out;
  }

  std::uint64_t next_u64();

  // Uniform in [0, bound); bound > 0.
  std::uint64_t uniform(std::uint64_t bound);

  bool deterministic() const { return state_ != nullptr; }

 private:
  struct State;
  explicit Rng(std::unique_ptr<State> state);
  std::unique_ptr<State> state_;
};

}  // namespace akalab::crypto
