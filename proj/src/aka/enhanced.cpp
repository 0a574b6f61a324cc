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

#include "akalab/aka/enhanced.hpp"

#include "derivations.hpp"

namespace akalab::aka {

using namespace detail;
using crypto::CurveId;

namespace {

bool share_matches(ProtocolId p, const wire::ChallengeShare& s) {
  return p == ProtocolId::p2 ? std::holds_alternative<wire::PointBytes>(s) : std::holds_alternative<Nonce>(s);
}

}  // namespace

// ---------------------------------------------------------------- UE

EnhancedUe::EnhancedUe(ProtocolId p, UeProfile& profile, crypto::Rng rng)
    : protocol_(p), profile_(profile), rng_(std::move(rng)) {
  if (p == ProtocolId::baseline) throw std::invalid_argument("EnhancedUe needs protocol 1 or 2");
}

EnhancedUe::~EnhancedUe() { release(); }

void EnhancedUe::release() {
  if (ephemeral_) ephemeral_->wipe();
  ephemeral_.reset();
  k_ue_.wipe();
  secure_wipe(r_);
  awaiting_ = false;
}

bool EnhancedUe::ephemeral_wiped() const {
  return (!ephemeral_ || ephemeral_->wiped()) && is_all_zero(k_ue_.s1) && is_all_zero(k_ue_.s2);
}

wire::M1 EnhancedUe::initiate() {
  // One draw supplies both the challenge R and the KEM exponent.
  auto draw = rng_.bytes<64>();
  ops_.rng_draws += 1;
  std::copy(draw.begin(), draw.begin() + 32, r_.begin());
  auto eph = crypto::Scalar::from_uniform_bytes(CurveId::secp256r1, ByteView(draw).subspan(32));
  secure_wipe(draw);
  if (!eph) throw crypto::CryptoError("zero ephemeral exponent");

  auto enc = crypto::ecies_encap_with(profile_.pk_hn, std::move(*eph), ops_);
  k_ue_ = enc.ks;
  auto sealed = crypto::ecies_senc(k_ue_, supi_with_challenge(profile_.supi, r_), ops_);
  const wire::PointBytes c0 = point_bytes(enc.c0);
  const Tag mac = challenge_mac(profile_.k, r_, c0, ops_);
  if (protocol_ == ProtocolId::p2) {
    ephemeral_ = std::move(enc.ephemeral);
  } else {
    enc.ephemeral.wipe();
  }
  awaiting_ = true;
  return {{c0, std::move(sealed.c1), sealed.mac}, mac, profile_.id_hn};
}

Outbox EnhancedUe::start() { return {{Party::sn, initiate()}}; }

std::optional<wire::M5> EnhancedUe::finalize(const wire::M4& m) {
  if (!awaiting_) return std::nullopt;
  awaiting_ = false;
  auto abort = [&]() -> std::optional<wire::M5> {
    outcome_ = Outcome::silent_abort;
    release();
    return std::nullopt;
  };
  if (!share_matches(protocol_, m.share)) return abort();
  const ByteView share = wire::share_bytes(m.share);

  Bytes dh_key;
  if (protocol_ == ProtocolId::p2) {
    try {
      const auto dh_hn = crypto::GroupElement::decode(CurveId::secp256r1, share);
      dh_key = crypto::dh_shared(*ephemeral_, dh_hn, ops_);
    } catch (const crypto::InvalidPoint&) {
      return abort();
    }
    ephemeral_->wipe();
    ephemeral_.reset();
  }

  const Bytes k_ue = k_ue_.joined();
  const Block32 res = session_res(profile_.k, k_ue, r_, ops_);
  Bytes ck_ik = session_ck_ik(profile_.k, k_ue, r_, ops_);
  const Key kseaf = protocol_ == ProtocolId::p2 ? p2_anchor(dh_key, k_ue, m.id_sn, ops_)
                                                : p1_anchor(ck_ik, r_, m.id_sn, ops_);
  secure_wipe(dh_key);
  secure_wipe(ck_ik);

  if (!equal_ct(serving_mac(kseaf, share, m.id_sn, r_, ops_), m.mac_star)) return abort();

  const Tag res_star = starred_res(res, r_, share, ops_);
  const Tag kc = confirmation_mac(kseaf, res_star, share, m.id_sn, ops_);
  kseaf_ = kseaf;
  id_sn_ = m.id_sn;
  outcome_ = Outcome::complete;
  release();
  return wire::M5{kc, res_star, m.id_sn};
}

Outbox EnhancedUe::on_message(Party from, const wire::Message& msg) {
  if (from != Party::sn) return ignore();
  if (const auto* n = std::get_if<wire::Notice>(&msg)) {
    if (n->code == wire::NoticeCode::complete) {
      reported_ = n->value;
    } else if (outcome_ == Outcome::pending) {
      outcome_ = Outcome::silent_abort;
      release();
    }
    return {};
  }
  if (const auto* m4 = std::get_if<wire::M4>(&msg); m4 && awaiting_) {
    if (auto m5 = finalize(*m4)) return {{Party::sn, std::move(*m5)}};
    return {};
  }
  return ignore();
}

// ---------------------------------------------------------------- SN

EnhancedSn::EnhancedSn(ProtocolId p, SnConfig cfg) : protocol_(p), cfg_(std::move(cfg)) {}

Outbox EnhancedSn::abort_to_ue() {
  phase_ = Phase::done;
  kseaf_.reset();
  if (outcome_ == Outcome::pending) outcome_ = Outcome::silent_abort;
  return {{Party::ue, wire::Notice{wire::NoticeCode::aborted, 0}}};
}

std::optional<wire::M6> EnhancedSn::check(const wire::M5& m) {
  if (!kseaf_ || m.id_sn != cfg_.id_sn) return std::nullopt;
  const ByteView share = wire::share_bytes(share_);
  if (!equal_ct(hashed_starred_res(m.res_star, xr_, share, ops_), hxres_star_)) return std::nullopt;
  if (!equal_ct(confirmation_mac(*kseaf_, m.res_star, share, cfg_.id_sn, ops_), m.kcmac)) return std::nullopt;
  return wire::M6{m.kcmac, m.res_star, share_};
}

Outbox EnhancedSn::on_message(Party from, const wire::Message& msg) {
  if (from == Party::ue) {
    if (const auto* m1 = std::get_if<wire::M1>(&msg); m1 && phase_ == Phase::awaiting_m1) {
      frames_ += 2;
      suci_ = m1->suci;
      phase_ = Phase::awaiting_m3;
      return {{Party::hn, wire::M2{m1->suci, m1->mac, m1->id_hn, cfg_.id_sn}}};
    }
    if (const auto* m5 = std::get_if<wire::M5>(&msg); m5 && phase_ == Phase::awaiting_m5) {
      ++frames_;
      if (auto m6 = check(*m5)) {
        ++frames_;
        phase_ = Phase::awaiting_m7;
        return {{Party::hn, std::move(*m6)}};
      }
      Outbox out = abort_to_ue();
      out.push_back({Party::hn, wire::Notice{wire::NoticeCode::aborted, 0}});
      return out;
    }
    return ignore();
  }

  if (from == Party::hn) {
    if (const auto* m3 = std::get_if<wire::M3>(&msg); m3 && phase_ == Phase::awaiting_m3) {
      frames_ += 2;
      hxres_star_ = m3->hxres_star;
      xr_ = m3->xr;
      share_ = m3->share;
      kseaf_ = m3->kseaf;
      phase_ = Phase::awaiting_m5;
      return {{Party::ue, wire::M4{m3->mac_star, m3->share, cfg_.id_sn}}};
    }
    if (const auto* m7 = std::get_if<wire::M7>(&msg); m7 && phase_ == Phase::awaiting_m7) {
      ++frames_;
      if (!(m7->suci == *suci_)) return abort_to_ue();
      phase_ = Phase::done;
      supi_ = m7->supi;
      id_sn_ = cfg_.id_sn;
      outcome_ = Outcome::complete;
      return {{Party::ue, wire::Notice{wire::NoticeCode::complete, frames_}}};
    }
    if (const auto* n = std::get_if<wire::Notice>(&msg); n && phase_ != Phase::done) {
      if (n->code == wire::NoticeCode::mac_failure) outcome_ = Outcome::mac_failure;
      return abort_to_ue();
    }
    return ignore();
  }
  return ignore();
}

// ---------------------------------------------------------------- HN

EnhancedHn::EnhancedHn(ProtocolId p, HnContext& ctx, crypto::Rng rng)
    : protocol_(p), ctx_(ctx), rng_(std::move(rng)) {
  if (p == ProtocolId::baseline) throw std::invalid_argument("EnhancedHn needs protocol 1 or 2");
}

EnhancedHn::~EnhancedHn() { release(); }

void EnhancedHn::release() {
  if (rhn_) rhn_->wipe();
  secure_wipe(dh_key_);
  secure_wipe(xres_star_);
}

bool EnhancedHn::ephemeral_wiped() const {
  const bool dh_zero = std::all_of(dh_key_.begin(), dh_key_.end(), [](std::uint8_t b) { return b == 0; });
  return (!rhn_ || rhn_->wiped()) && dh_zero;
}

std::optional<wire::M3> EnhancedHn::respond(const wire::M2& m, Reject& reject) {
  reject = Reject::decrypt_failure;
  if (m.id_hn != ctx_.id_hn) return std::nullopt;
  std::optional<crypto::GroupElement> c0;
  try {
    c0 = crypto::GroupElement::decode(CurveId::secp256r1, m.suci.c0);
  } catch (const crypto::InvalidPoint&) {
    return std::nullopt;
  }
  const auto ks = crypto::ecies_decap(ctx_.keys.sk, *c0, ops_);
  auto plain = crypto::ecies_sdec(ks, m.suci.c1, m.suci.mac, ops_);
  if (!plain || plain->size() <= kBlockLen) return std::nullopt;
  std::string supi(plain->begin(), plain->end() - kBlockLen);
  const Nonce xr = to_array<32>(ByteView(*plain).last(kBlockLen));
  secure_wipe(*plain);
  const auto k = ctx_.db.key(supi);
  if (!k) return std::nullopt;

  if (!equal_ct(challenge_mac(*k, xr, m.suci.c0, ops_), m.mac)) {
    reject = Reject::mac_failure;
    return std::nullopt;
  }
  reject = Reject::none;

  auto r_hn = rng_.bytes<32>();
  ops_.rng_draws += 1;
  if (protocol_ == ProtocolId::p2) {
    rhn_ = crypto::Scalar::from_uniform_bytes(CurveId::secp256r1, r_hn);
    secure_wipe(r_hn);
    if (!rhn_) throw crypto::CryptoError("zero DH exponent");
    share_ = point_bytes(crypto::dh_pub(*rhn_, ops_));
    dh_key_ = crypto::dh_shared(*rhn_, *c0, ops_);
    rhn_->wipe();
  } else {
    share_ = r_hn;
  }
  const ByteView share = wire::share_bytes(share_);

  const Bytes k_ue = ks.joined();
  const Block32 xres = session_res(*k, k_ue, xr, ops_);
  Bytes ck_ik = session_ck_ik(*k, k_ue, xr, ops_);
  xres_star_ = starred_res(xres, xr, share, ops_);
  const Key kseaf = protocol_ == ProtocolId::p2 ? p2_anchor(dh_key_, k_ue, m.id_sn, ops_)
                                                : p1_anchor(ck_ik, xr, m.id_sn, ops_);
  secure_wipe(dh_key_);
  secure_wipe(ck_ik);
  const Tag hxres_star = hashed_starred_res(xres_star_, xr, share, ops_);
  const Tag mac_star = serving_mac(kseaf, share, m.id_sn, xr, ops_);

  awaiting_ = true;
  supi_full_ = supi;
  suci_ = m.suci;
  kseaf_ = kseaf;
  supi_ = supi;
  id_sn_ = m.id_sn;
  return wire::M3{hxres_star, mac_star, xr, share_, kseaf};
}

std::optional<wire::M7> EnhancedHn::confirm(const wire::M6& m) {
  if (!awaiting_) return std::nullopt;
  awaiting_ = false;
  if (m.share != share_ || !equal_ct(m.res_star, xres_star_)) return std::nullopt;
  const Tag kc = confirmation_mac(*kseaf_, m.res_star, wire::share_bytes(share_), *id_sn_, ops_);
  if (!equal_ct(kc, m.kcmac)) return std::nullopt;
  return wire::M7{supi_full_, suci_};
}

Outbox EnhancedHn::on_message(Party from, const wire::Message& msg) {
  if (from != Party::sn) return ignore();
  if (const auto* m2 = std::get_if<wire::M2>(&msg); m2 && outcome_ == Outcome::pending && !awaiting_) {
    Reject why = Reject::none;
    if (auto m3 = respond(*m2, why)) return {{Party::sn, std::move(*m3)}};
    outcome_ = why == Reject::mac_failure ? Outcome::mac_failure : Outcome::silent_abort;
    release();
    const auto code = why == Reject::mac_failure ? wire::NoticeCode::mac_failure : wire::NoticeCode::aborted;
    return {{Party::sn, wire::Notice{code, 0}}};
  }
  if (const auto* m6 = std::get_if<wire::M6>(&msg); m6 && awaiting_) {
    auto m7 = confirm(*m6);
    release();
    if (!m7) {
      outcome_ = Outcome::silent_abort;
      kseaf_.reset();
      return {{Party::sn, wire::Notice{wire::NoticeCode::aborted, 0}}};
    }
    outcome_ = Outcome::complete;
    return {{Party::sn, std::move(*m7)}};
  }
  if (std::holds_alternative<wire::Notice>(msg) && awaiting_) {
    awaiting_ = false;
    outcome_ = Outcome::silent_abort;
    release();
    return {};
  }
  return ignore();
}

}  // namespace akalab::aka
