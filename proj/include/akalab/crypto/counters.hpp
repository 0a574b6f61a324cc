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
#include <string>

namespace akalab::crypto {

/// Per-session operation tally, one field per cost symbol of the protocol
/// cost model (hash/KDF/MAC, scalar multiplication, symmetric encrypt and
/// decrypt, XOR, addition, random generation).
///
/// `rng_draws` counts RNG invocations, not bytes: a single draw that yields
/// both a challenge and an ephemeral exponent is one draw.
struct OpCounters {
  std::uint64_t hash_ops = 0;
  std::uint64_t scalar_mults = 0;
  std::uint64_t sym_encs = 0;
  std::uint64_t sym_decs = 0;
  std::uint64_t xors = 0;
  std::uint64_t adds = 0;
  std::uint64_t rng_draws = 0;

  bool operator==(const OpCounters&) const = default;

  OpCounters& operator+=(const OpCounters& o) {
    hash_ops += o.hash_ops;
    scalar_mults += o.scalar_mults;
    sym_encs += o.sym_encs;
    sym_decs += o.sym_decs;
    xors += o.xors;
    adds += o.adds;
    rng_draws += o.rng_draws;
    return *this;
  }

  std::uint64_t total() const {
    return hash_ops + scalar_mults + sym_encs + sym_decs + xors + adds + rng_draws;
  }

  // "hash=10 mult=2 enc=1 dec=0 xor=0 add=0 rng=1"
  std::string to_string() const;
};

}  // namespace akalab::crypto
