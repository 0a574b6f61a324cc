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

#include "akalab/aka/pfs.hpp"

#include "akalab/wire/codec.hpp"
#include "derivations.hpp"

namespace akalab::aka {

using namespace detail;
using crypto::CurveId;

namespace {

template <typename T>
const T* last_of(const std::vector<wire::Message>& msgs) {
  const T* found = nullptr;
  for (const auto& m : msgs) {
    if (const auto* p = std::get_if<T>(&m)) found = p;
  }
  return found;
}

Recovery recover_baseline(const EavesdropperView& v, const Key& k) {
  const auto* ch = last_of<wire::SnChallenge>(v.open_messages);
  if (!ch) throw MalformedTranscript("no SnChallenge on the open link");
  OpCounters scratch;
  const wire::Sqn sqn = xor_sqn(ch->autn.conc, anonymity_key(k, ch->r, scratch), scratch);
  if (!equal_ct(sqn_mac(k, sqn, ch->r, scratch), ch->autn.mac)) {
    return {std::nullopt, "AUTN does not verify under k"};
  }
  const Bytes ck_ik = baseline_ck_ik(k, ch->r, scratch);
  return {baseline_anchor(ck_ik, ch->r, sqn, v.id_sn, scratch),
          "SQN=" + std::to_string(sqn_decode(sqn)) + " unmasked from CONC"};
}

struct Opened {
  crypto::SharedSecret k_ue;
  Nonce r{};
  crypto::GroupElement c0;
};

std::optional<Opened> open_suci(const wire::M1& m1, const crypto::Scalar& sk_hn) {
  OpCounters scratch;
  try {
    auto c0 = crypto::GroupElement::decode(CurveId::secp256r1, m1.suci.c0);
    auto ks = crypto::ecies_decap(sk_hn, c0, scratch);
    auto plain = crypto::ecies_sdec(ks, m1.suci.c1, m1.suci.mac, scratch);
    if (!plain || plain->size() <= kBlockLen) return std::nullopt;
    return Opened{ks, to_array<32>(ByteView(*plain).last(kBlockLen)), c0};
  } catch (const crypto::InvalidPoint&) {
    return std::nullopt;
  }
}

// Any 32-byte window x with reduce(x)*g equal to one of the public DH values
// is a usable exponent.
std::optional<Bytes> search_dh_exponent(const EavesdropperView& v, const Key& k, const crypto::Scalar& sk_hn,
                                        const crypto::GroupElement& c0, const crypto::GroupElement& dh_hn,
                                        std::size_t& tried) {
  std::vector<Bytes> haystack;
  for (const auto& m : v.open_messages) {
    haystack.push_back(wire::encode({wire::kWireVersion, v.protocol, {}, m}));
  }
  haystack.emplace_back(k.begin(), k.end());
  haystack.emplace_back(sk_hn.bytes().begin(), sk_hn.bytes().end());

  OpCounters scratch;
  for (const auto& blob : haystack) {
    for (std::size_t off = 0; off + kBlockLen <= blob.size(); ++off) {
      auto x = crypto::Scalar::from_uniform_bytes(CurveId::secp256r1, ByteView(blob).subspan(off, kBlockLen));
      if (!x) continue;
      ++tried;
      const auto xg = crypto::mul_generator(*x, scratch);
      if (xg == dh_hn) return crypto::dh_shared(*x, c0, scratch);
      if (xg == c0) return crypto::dh_shared(*x, dh_hn, scratch);
    }
  }
  return std::nullopt;
}

}  // namespace

Recovery recompute_from_compromise(const EavesdropperView& v, const Key& k, const crypto::Scalar& sk_hn) {
  if (v.protocol == ProtocolId::baseline) return recover_baseline(v, k);

  const auto* m1 = last_of<wire::M1>(v.open_messages);
  const auto* m4 = last_of<wire::M4>(v.open_messages);
  if (!m1 || !m4) throw MalformedTranscript("M1 and M4 are required");
  auto opened = open_suci(*m1, sk_hn);
  if (!opened) return {std::nullopt, "SUCI does not open under sk_HN"};
  const Bytes k_ue = opened->k_ue.joined();

  OpCounters scratch;
  if (v.protocol == ProtocolId::p1) {
    const Bytes ck_ik = session_ck_ik(k, k_ue, opened->r, scratch);
    return {p1_anchor(ck_ik, opened->r, m4->id_sn, scratch), "R and k_UE recovered from SUCI"};
  }

  const auto* share = std::get_if<wire::PointBytes>(&m4->share);
  if (!share) throw MalformedTranscript("protocol 2 M4 without a DH share");
  std::optional<crypto::GroupElement> dh_hn;
  try {
    dh_hn = crypto::GroupElement::decode(CurveId::secp256r1, *share);
  } catch (const crypto::InvalidPoint&) {
    throw MalformedTranscript("protocol 2 M4 share is not a valid point");
  }
  std::size_t tried = 0;
  auto dh_key = search_dh_exponent(v, k, sk_hn, opened->c0, *dh_hn, tried);
  if (!dh_key) {
    return {std::nullopt, "insufficient information: no DH exponent among " + std::to_string(tried) +
                              " candidate fields"};
  }
  return {p2_anchor(*dh_key, k_ue, m4->id_sn, scratch), "DH exponent found in transcript"};
}

}  // namespace akalab::aka
