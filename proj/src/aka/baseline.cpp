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

#include "akalab/aka/baseline.hpp"

#include "derivations.hpp"

namespace akalab::aka {

using namespace detail;
using crypto::CurveId;

// ---------------------------------------------------------------- UE

BaselineUe::BaselineUe(UeProfile& profile, crypto::Rng rng, SessionOptions opts)
    : profile_(profile), rng_(std::move(rng)), opts_(opts) {}

wire::AttachRequest BaselineUe::attach() {
  auto enc = crypto::ecies_encap(profile_.pk_hn, rng_, ops_);
  auto sealed = crypto::ecies_senc(enc.ks, view(profile_.supi), ops_);
  enc.ephemeral.wipe();
  phase_ = Phase::awaiting_challenge;
  return {{point_bytes(enc.c0), std::move(sealed.c1), sealed.mac}, profile_.id_hn};
}

Outbox BaselineUe::start() { return {{Party::sn, attach()}}; }

wire::UeResponse BaselineUe::check_challenge(const wire::SnChallenge& c) {
  const Key& k = profile_.k;
  const auto ak = anonymity_key(k, c.r, ops_);
  const wire::Sqn sqn_hn = xor_sqn(c.autn.conc, ak, ops_);
  const Tag expected = sqn_mac(k, sqn_hn, c.r, ops_);
  if (!equal_ct(expected, c.autn.mac)) {
    outcome_ = Outcome::mac_failure;
    return {wire::ResponseKind::mac_failure, {}, {}};
  }
  if (sqn_decode(sqn_hn) <= profile_.sqn) {
    const wire::Sqn mine = sqn_encode(profile_.sqn);
    const auto ak_star = resync_anonymity_key(k, c.r, ops_);
    wire::Autn token{xor_sqn(mine, ak_star, ops_), resync_mac(k, mine, c.r, ops_)};
    outcome_ = Outcome::sync_failure;
    return {wire::ResponseKind::sync_failure, {}, token};
  }
  profile_.sqn = sqn_decode(sqn_hn);
  ops_.adds += 1;
  const Block32 res = baseline_res(k, c.r, ops_);
  const Bytes ck_ik = baseline_ck_ik(k, c.r, ops_);
  kseaf_ = baseline_anchor(ck_ik, c.r, sqn_hn, profile_.serving_network, ops_);
  id_sn_ = profile_.serving_network;
  return {wire::ResponseKind::res, res, {}};
}

Outbox BaselineUe::on_message(Party from, const wire::Message& msg) {
  if (from != Party::sn) return ignore();

  if (const auto* n = std::get_if<wire::Notice>(&msg)) {
    if (n->code == wire::NoticeCode::complete) {
      reported_ = n->value;
    } else if (phase_ != Phase::done) {
      phase_ = Phase::done;
      if (outcome_ == Outcome::pending) outcome_ = Outcome::silent_abort;
    }
    return {};
  }

  if (const auto* c = std::get_if<wire::SnChallenge>(&msg); c && phase_ == Phase::awaiting_challenge) {
    wire::UeResponse resp = check_challenge(*c);
    Outbox out{{Party::sn, resp}};
    switch (resp.kind) {
      case wire::ResponseKind::mac_failure:
        phase_ = Phase::done;
        break;
      case wire::ResponseKind::sync_failure:
        phase_ = Phase::done;
        if (opts_.restart_after_sync_failure) {
          resynced_ = true;
          out.push_back({Party::sn, attach()});
        }
        break;
      case wire::ResponseKind::res:
        if (opts_.key_confirmation && !resynced_) {
          phase_ = Phase::awaiting_confirm;
        } else {
          phase_ = Phase::done;
          outcome_ = Outcome::complete;
        }
        break;
    }
    return out;
  }

  if (const auto* kc = std::get_if<wire::SnKeyConfirm>(&msg); kc && phase_ == Phase::awaiting_confirm) {
    phase_ = Phase::done;
    if (!equal_ct(kc->mac, sn_confirm(*kseaf_, profile_.serving_network))) {
      outcome_ = Outcome::silent_abort;
      return {};
    }
    outcome_ = Outcome::complete;
    return {{Party::sn, wire::UeKeyConfirm{ue_confirm(*kseaf_, profile_.serving_network)}}};
  }

  return ignore();
}

// ---------------------------------------------------------------- SN

BaselineSn::BaselineSn(SnConfig cfg, SessionOptions opts) : cfg_(std::move(cfg)), opts_(opts) {}

std::optional<wire::SnResult> BaselineSn::check(const wire::UeResponse& r) {
  if (r.kind != wire::ResponseKind::res) return std::nullopt;
  if (!equal_ct(hashed_res(r_, r.res, ops_), hxres_)) return std::nullopt;
  return wire::SnResult{r.res};
}

Outbox BaselineSn::finish() {
  phase_ = Phase::done;
  outcome_ = Outcome::complete;
  id_sn_ = cfg_.id_sn;
  return {{Party::ue, wire::Notice{wire::NoticeCode::complete, frames_}}};
}

Outbox BaselineSn::abort_to_ue() {
  phase_ = Phase::done;
  if (outcome_ == Outcome::pending) outcome_ = Outcome::silent_abort;
  return {{Party::ue, wire::Notice{wire::NoticeCode::aborted, 0}}};
}

Outbox BaselineSn::on_message(Party from, const wire::Message& msg) {
  if (from == Party::ue) {
    if (const auto* a = std::get_if<wire::AttachRequest>(&msg); a && phase_ == Phase::awaiting_attach) {
      frames_ += 2;
      suci_ = a->suci;
      phase_ = Phase::awaiting_challenge;
      return {{Party::hn, wire::SnToHnAttach{a->suci, a->id_hn, cfg_.id_sn}}};
    }
    if (const auto* r = std::get_if<wire::UeResponse>(&msg); r && phase_ == Phase::awaiting_response) {
      ++frames_;
      switch (r->kind) {
        case wire::ResponseKind::res:
          if (auto fwd = check(*r)) {
            ++frames_;
            phase_ = Phase::awaiting_result;
            return {{Party::hn, *fwd}};
          }
          {
            Outbox out = abort_to_ue();
            out.push_back({Party::hn, wire::Notice{wire::NoticeCode::aborted, 0}});
            return out;
          }
        case wire::ResponseKind::mac_failure:
          phase_ = Phase::done;
          outcome_ = Outcome::mac_failure;
          kseaf_.reset();
          return {{Party::hn, wire::Notice{wire::NoticeCode::mac_failure, 0}}};
        case wire::ResponseKind::sync_failure:
          ++frames_;
          resynced_ = true;
          outcome_ = Outcome::sync_failure;
          kseaf_.reset();
          phase_ = Phase::awaiting_attach;
          return {{Party::hn, wire::ResyncForward{r->autn_star, r_, *suci_}}};
      }
    }
    if (const auto* kc = std::get_if<wire::UeKeyConfirm>(&msg); kc && phase_ == Phase::awaiting_confirm) {
      ++frames_;
      if (!equal_ct(kc->mac, ue_confirm(*kseaf_, cfg_.id_sn))) return abort_to_ue();
      return finish();
    }
    return ignore();
  }

  if (from == Party::hn) {
    if (const auto* c = std::get_if<wire::HnChallenge>(&msg); c && phase_ == Phase::awaiting_challenge) {
      frames_ += 2;
      r_ = c->r;
      hxres_ = c->hxres;
      kseaf_ = c->kseaf;
      phase_ = Phase::awaiting_response;
      return {{Party::ue, wire::SnChallenge{c->r, c->autn}}};
    }
    if (const auto* res = std::get_if<wire::HnResult>(&msg); res && phase_ == Phase::awaiting_result) {
      ++frames_;
      supi_ = res->supi;
      // A re-synchronized run skips confirmation and stays at 13 frames.
      if (!opts_.key_confirmation || resynced_) return finish();
      ++frames_;
      phase_ = Phase::awaiting_confirm;
      return {{Party::ue, wire::SnKeyConfirm{sn_confirm(*kseaf_, cfg_.id_sn)}}};
    }
    if (std::holds_alternative<wire::Notice>(msg) && phase_ != Phase::done) {
      kseaf_.reset();
      return abort_to_ue();
    }
    return ignore();
  }
  return ignore();
}

// ---------------------------------------------------------------- HN

BaselineHn::BaselineHn(HnContext& ctx, crypto::Rng rng) : ctx_(ctx), rng_(std::move(rng)) {}

std::optional<wire::HnChallenge> BaselineHn::challenge(const wire::SnToHnAttach& m) {
  if (m.id_hn != ctx_.id_hn) return std::nullopt;
  std::optional<crypto::GroupElement> c0;
  try {
    c0 = crypto::GroupElement::decode(CurveId::secp256r1, m.suci.c0);
  } catch (const crypto::InvalidPoint&) {
    return std::nullopt;
  }
  const auto ks = crypto::ecies_decap(ctx_.keys.sk, *c0, ops_);
  const auto plain = crypto::ecies_sdec(ks, m.suci.c1, m.suci.mac, ops_);
  if (!plain) return std::nullopt;
  std::string supi(plain->begin(), plain->end());
  const auto k = ctx_.db.key(supi);
  if (!k) return std::nullopt;

  Pending p{supi, *k, m.suci, rng_.bytes<32>(), {}};
  ops_.rng_draws += 1;
  const wire::Sqn sqn = sqn_encode(ctx_.db.take_sqn(supi));
  ops_.adds += 1;

  const auto ak = anonymity_key(p.k, p.r, ops_);
  wire::Autn autn{xor_sqn(sqn, ak, ops_), sqn_mac(p.k, sqn, p.r, ops_)};
  p.xres = baseline_res(p.k, p.r, ops_);
  const Tag hxres = hashed_res(p.r, p.xres, ops_);
  const Bytes ck_ik = baseline_ck_ik(p.k, p.r, ops_);
  const Key kseaf = baseline_anchor(ck_ik, p.r, sqn, m.id_sn, ops_);

  kseaf_ = kseaf;
  supi_ = supi;
  id_sn_ = m.id_sn;
  wire::HnChallenge out{p.r, autn, hxres, kseaf};
  pending_ = std::move(p);
  return out;
}

std::optional<wire::HnResult> BaselineHn::verify(const wire::SnResult& m) {
  if (!pending_ || !equal_ct(m.res, pending_->xres)) return std::nullopt;
  return wire::HnResult{pending_->supi};
}

bool BaselineHn::resync(const wire::ResyncForward& m) {
  if (!pending_ || m.r != pending_->r || !(m.suci == pending_->suci)) return false;
  const Key& k = pending_->k;
  const auto ak_star = resync_anonymity_key(k, m.r, ops_);
  const wire::Sqn sqn_ue = xor_sqn(m.autn_star.conc, ak_star, ops_);
  if (!equal_ct(resync_mac(k, sqn_ue, m.r, ops_), m.autn_star.mac)) return false;
  ctx_.db.resync(pending_->supi, sqn_decode(sqn_ue));
  ops_.adds += 1;
  pending_.reset();
  kseaf_.reset();
  return true;
}

Outbox BaselineHn::on_message(Party from, const wire::Message& msg) {
  if (from != Party::sn) return ignore();
  const wire::Notice aborted{wire::NoticeCode::aborted, 0};

  if (const auto* a = std::get_if<wire::SnToHnAttach>(&msg)) {
    if (outcome_ == Outcome::complete) return ignore();
    auto c = challenge(*a);
    if (!c) {
      outcome_ = Outcome::silent_abort;
      return {{Party::sn, aborted}};
    }
    outcome_ = Outcome::pending;
    return {{Party::sn, std::move(*c)}};
  }
  if (const auto* r = std::get_if<wire::SnResult>(&msg); r && outcome_ == Outcome::pending) {
    if (auto res = verify(*r)) {
      outcome_ = Outcome::complete;
      return {{Party::sn, std::move(*res)}};
    }
    outcome_ = Outcome::silent_abort;
    kseaf_.reset();
    return {{Party::sn, aborted}};
  }
  if (const auto* rs = std::get_if<wire::ResyncForward>(&msg)) {
    if (resync(*rs)) outcome_ = Outcome::sync_failure;
    return {};
  }
  if (const auto* n = std::get_if<wire::Notice>(&msg); n && outcome_ == Outcome::pending) {
    outcome_ = n->code == wire::NoticeCode::mac_failure ? Outcome::mac_failure : Outcome::silent_abort;
    kseaf_.reset();
    pending_.reset();
    return {};
  }
  return ignore();
}

}  // namespace akalab::aka
