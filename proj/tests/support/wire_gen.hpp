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

// Random well-formed frames for round-trip and fuzz tests.

#include "akalab/crypto/rng.hpp"
#include "akalab/wire/codec.hpp"

namespace akalab::wire::gen {

using crypto::Rng;

template <std::size_t N>
std::array<std::uint8_t, N> rand_arr(Rng& rng) {
  return rng.bytes<N>();
}

inline std::string rand_id(Rng& rng) {
  std::string s(1 + rng.uniform(kMaxIdentityLen), 'a');
  for (auto& c : s) c = static_cast<char>('!' + rng.uniform(94));
  return s;
}

inline Suci rand_suci(Rng& rng) {
  Suci s;
  s.c0 = rand_arr<kPointLen>(rng);
  s.c1.resize(1 + rng.uniform(120));
  rng.fill(s.c1);
  s.mac = rand_arr<32>(rng);
  return s;
}

inline Autn rand_autn(Rng& rng) { return {rand_arr<kSqnLen>(rng), rand_arr<32>(rng)}; }

inline ChallengeShare rand_share(Rng& rng, ProtocolId p) {
  if (p == ProtocolId::p2) return rand_arr<kPointLen>(rng);
  return rand_arr<32>(rng);
}

// One random instance of the alternative at `index`.
inline Message rand_message(std::size_t index, Rng& rng, ProtocolId p) {
  switch (index) {
    case 0:
      return AttachRequest{rand_suci(rng), rand_id(rng)};
    case 1:
      return SnToHnAttach{rand_suci(rng), rand_id(rng), rand_id(rng)};
    case 2:
      return HnChallenge{rand_arr<32>(rng), rand_autn(rng), rand_arr<32>(rng), rand_arr<32>(rng)};
    case 3:
      return SnChallenge{rand_arr<32>(rng), rand_autn(rng)};
    case 4: {
      UeResponse r;
      r.kind = static_cast<ResponseKind>(1 + rng.uniform(3));
      if (r.kind == ResponseKind::res) r.res = rand_arr<32>(rng);
      if (r.kind == ResponseKind::sync_failure) r.autn_star = rand_autn(rng);
      return r;
    }
    case 5:
      return SnResult{rand_arr<32>(rng)};
    case 6:
      return HnResult{rand_id(rng)};
    case 7:
      return ResyncForward{rand_autn(rng), rand_arr<32>(rng), rand_suci(rng)};
    case 8:
      return SnKeyConfirm{rand_arr<32>(rng)};
    case 9:
      return UeKeyConfirm{rand_arr<32>(rng)};
    case 10:
      return M1{rand_suci(rng), rand_arr<32>(rng), rand_id(rng)};
    case 11:
      return M2{rand_suci(rng), rand_arr<32>(rng), rand_id(rng), rand_id(rng)};
    case 12:
      return M3{rand_arr<32>(rng), rand_arr<32>(rng), rand_arr<32>(rng), rand_share(rng, p), rand_arr<32>(rng)};
    case 13:
      return M4{rand_arr<32>(rng), rand_share(rng, p), rand_id(rng)};
    case 14:
      return M5{rand_arr<32>(rng), rand_arr<32>(rng), rand_id(rng)};
    case 15:
      return M6{rand_arr<32>(rng), rand_arr<32>(rng), rand_share(rng, p)};
    case 16:
      return M7{rand_id(rng), rand_suci(rng)};
    default:
      return Notice{static_cast<NoticeCode>(1 + rng.uniform(5)), static_cast<std::uint32_t>(rng.next_u64())};
  }
}

inline Frame rand_frame(std::size_t index, Rng& rng) {
  Frame f;
  if (index < 10) {
    f.protocol = ProtocolId::baseline;
  } else if (index < 17) {
    f.protocol = rng.uniform(2) ? ProtocolId::p1 : ProtocolId::p2;
  } else {
    f.protocol = static_cast<ProtocolId>(rng.uniform(3));
  }
  f.session = rand_arr<kSessionIdLen>(rng);
  f.msg = rand_message(index, rng, f.protocol);
  return f;
}

}  // namespace akalab::wire::gen
