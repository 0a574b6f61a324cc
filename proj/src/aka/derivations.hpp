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

// Derivation formulas shared by the state machines and the compromise
// oracle. Every function costs exactly one hash op unless noted.

#include <string>

#include "akalab/aka/common.hpp"
#include "akalab/crypto/derive.hpp"

namespace akalab::aka::detail {

using crypto::f;
using crypto::FTag;

inline ByteView view(const std::string& s) { return as_bytes(s); }

// ---- baseline ----

inline Bytes anonymity_key(const Key& k, const Nonce& r, OpCounters& ops) { return f(FTag::f5, k, {r}, ops); }
inline Bytes resync_anonymity_key(const Key& k, const Nonce& r, OpCounters& ops) {
  return f(FTag::f5_star, k, {r}, ops);
}
inline Tag sqn_mac(const Key& k, const wire::Sqn& sqn, const Nonce& r, OpCounters& ops) {
  return to_array<32>(f(FTag::f1, k, {sqn, r}, ops));
}
inline Tag resync_mac(const Key& k, const wire::Sqn& sqn, const Nonce& r, OpCounters& ops) {
  return to_array<32>(f(FTag::f1_star, k, {sqn, r}, ops));
}
inline Block32 baseline_res(const Key& k, const Nonce& r, OpCounters& ops) {
  return to_array<32>(f(FTag::f2, k, {r}, ops));
}
inline Bytes baseline_ck_ik(const Key& k, const Nonce& r, OpCounters& ops) {
  return concat({f(FTag::f3, k, {r}, ops), f(FTag::f4, k, {r}, ops)});  // 2 hash ops
}
inline Tag hashed_res(const Nonce& r, const Block32& res, OpCounters& ops) {
  return crypto::hash_fields("akalab-hxres", {r, res}, ops);
}
inline Key baseline_anchor(ByteView ck_ik, const Nonce& r, const wire::Sqn& sqn, const std::string& id_sn,
                           OpCounters& ops) {
  return crypto::kdf_anchor({ck_ik, r, sqn, view(id_sn)}, ops);
}

inline wire::Sqn xor_sqn(const wire::Sqn& a, ByteView b, OpCounters& ops) {
  return to_array<wire::kSqnLen>(crypto::xor_bytes(a, b, ops));
}

// ---- protocols 1 and 2 ----

inline Tag challenge_mac(const Key& k, const Nonce& r, const wire::PointBytes& c0, OpCounters& ops) {
  return to_array<32>(f(FTag::f1, k, {r, c0}, ops));
}
inline Block32 session_res(const Key& k, ByteView k_ue, const Nonce& r, OpCounters& ops) {
  return to_array<32>(f(FTag::f2, k, {k_ue, r}, ops));
}
inline Bytes session_ck_ik(const Key& k, ByteView k_ue, const Nonce& r, OpCounters& ops) {
  return concat({f(FTag::f3, k, {k_ue, r}, ops), f(FTag::f4, k, {k_ue, r}, ops)});  // 2 hash ops
}
inline Key p1_anchor(ByteView ck_ik, const Nonce& r, const std::string& id_sn, OpCounters& ops) {
  return crypto::kdf_anchor({ck_ik, r, view(id_sn)}, ops);
}
inline Key p2_anchor(ByteView dh_key, ByteView k_ue, const std::string& id_sn, OpCounters& ops) {
  return crypto::kdf_anchor({dh_key, k_ue, view(id_sn)}, ops);
}
inline Tag starred_res(const Block32& res, const Nonce& r, ByteView share, OpCounters& ops) {
  return crypto::hash_fields("akalab-res-star", {res, r, share}, ops);
}
inline Tag hashed_starred_res(const Tag& res_star, const Nonce& r, ByteView share, OpCounters& ops) {
  return crypto::hash_fields("akalab-hxres-star", {res_star, r, share}, ops);
}
inline Tag serving_mac(const Key& kseaf, ByteView share, const std::string& id_sn, const Nonce& r,
                       OpCounters& ops) {
  return crypto::mac_fields(kseaf, "akalab-mac-star", {share, view(id_sn), r}, ops);
}
inline Tag confirmation_mac(const Key& kseaf, const Tag& res_star, ByteView share, const std::string& id_sn,
                            OpCounters& ops) {
  return crypto::mac_fields(kseaf, "akalab-kcmac", {res_star, share, view(id_sn)}, ops);
}

// SUCI plaintext for protocols 1/2 is SUPI || R.
inline Bytes supi_with_challenge(const std::string& supi, const Nonce& r) { return concat({view(supi), r}); }

// ---- baseline key confirmation, outside the audited budgets ----

inline Tag sn_confirm(const Key& kseaf, const std::string& id_sn) {
  OpCounters scratch;
  return crypto::mac_fields(kseaf, "akalab-kc-sn", {view(id_sn)}, scratch);
}
inline Tag ue_confirm(const Key& kseaf, const std::string& id_sn) {
  OpCounters scratch;
  return crypto::mac_fields(kseaf, "akalab-kc-ue", {view(id_sn)}, scratch);
}

inline wire::PointBytes point_bytes(const crypto::GroupElement& g) {
  return to_array<wire::kPointLen>(g.encoding());
}

}  // namespace akalab::aka::detail
