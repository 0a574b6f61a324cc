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

#include <optional>

#include "akalab/crypto/bytes.hpp"
#include "akalab/crypto/counters.hpp"
#include "akalab/crypto/group.hpp"
#include "akalab/crypto/rng.hpp"

namespace akalab::crypto {

struct KeyPair {
  Scalar sk;
  GroupElement pk;
};

/// sk uniform in [1, q), pk = sk * g. Setup-time operation, not counted.
KeyPair ecies_keygen(CurveId curve, Rng& rng);

/// KEM output split into an encryption half (s1) and a MAC half (s2).
/// Both halves are wiped on destruction.
struct SharedSecret {
  Block32 s1{};
  Block32 s2{};

  SharedSecret() = default;
  SharedSecret(const SharedSecret&) = default;
  SharedSecret& operator=(const SharedSecret&) = default;
  ~SharedSecret();

  bool operator==(const SharedSecret& o) const { return s1 == o.s1 && s2 == o.s2; }

  // s1 || s2, the form protocols feed into derivations.
  Bytes joined() const;
  void wipe();
};

struct Encapsulation {
  GroupElement c0;
  SharedSecret ks;
  // Returned so a caller may reuse it as a DH exponent; wipe when done.
  Scalar ephemeral;
};

/// Draws r (1 rng), computes C0 = r*g and KDF(r*pk): 2 mults + 1 hash.
Encapsulation ecies_encap(const GroupElement& pk, Rng& rng, OpCounters& ops);

/// As ecies_encap with a caller-supplied ephemeral (no draw).
Encapsulation ecies_encap_with(const GroupElement& pk, Scalar ephemeral, OpCounters& ops);

/// KDF(sk * C0): 1 mult + 1 hash.
SharedSecret ecies_decap(const Scalar& sk, const GroupElement& c0, OpCounters& ops);

struct SealedPayload {
  Bytes c1;
  Tag mac{};
};

/// C1 = Enc(s1, m), mac = MAC(s2, C1). 1 sym_enc + 1 hash. Throws
/// std::invalid_argument on an empty message.
SealedPayload ecies_senc(const SharedSecret& ks, ByteView m, OpCounters& ops);

/// Verify-then-decrypt. nullopt is MacFailure; in that case only the MAC
/// (1 hash) has been computed. Success costs 1 hash + 1 sym_dec.
std::optional<Bytes> ecies_sdec(const SharedSecret& ks, ByteView c1, ByteView mac, OpCounters& ops);

}  // namespace akalab::crypto
