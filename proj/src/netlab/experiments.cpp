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

#include "akalab/netlab/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "akalab/aka/pfs.hpp"
#include "akalab/crypto/rng.hpp"

namespace akalab::netlab {

namespace {

constexpr std::size_t kTarget = 0;
constexpr std::size_t kOther = 1;

std::string init_kind(ProtocolId p) { return p == ProtocolId::baseline ? "AttachRequest" : "M1"; }
std::string challenge_kind(ProtocolId p) { return p == ProtocolId::baseline ? "SnChallenge" : "M4"; }

// Half target, half other, in a seeded random order.
std::vector<bool> balanced_assignment(std::size_t n, std::uint64_t seed) {
  std::vector<bool> v(n, false);
  for (std::size_t i = 0; i < n / 2; ++i) v[i] = true;
  auto rng = crypto::Rng::seeded(seed, "assignment");
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = rng.uniform(i);
    const bool tmp = v[i - 1];
    v[i - 1] = v[j];
    v[j] = tmp;
  }
  return v;
}

std::string message_label(const wire::Message& m) {
  std::string s(wire::message_name(m));
  if (const auto* r = std::get_if<wire::UeResponse>(&m)) {
    switch (r->kind) {
      case wire::ResponseKind::res:
        s += "/res";
        break;
      case wire::ResponseKind::mac_failure:
        s += "/mac_failure";
        break;
      case wire::ResponseKind::sync_failure:
        s += "/sync_failure";
        break;
    }
  }
  return s;
}

// What the subscriber put on the air, minus its own initiation.
std::string ue_signature(const Transcript& t) {
  const std::string init = init_kind(t.protocol);
  std::string sig;
  for (const auto& m : t.sent_by(Party::ue)) {
    if (wire::message_name(m) == init) continue;
    if (!sig.empty()) sig += ' ';
    sig += message_label(m);
  }
  return sig.empty() ? "silence" : sig;
}

void require_complete(const Transcript& t, const char* what) {
  if (t.ue.outcome != Outcome::complete) {
    throw std::logic_error(std::string(what) + ": honest session did not complete\n" + t.render());
  }
}

}  // namespace

std::string DistinguisherResult::summary() const {
  std::ostringstream os;
  char adv[32];
  std::snprintf(adv, sizeof adv, "%.3f", advantage);
  os << "trials=" << trials << " correct=" << correct << " advantage=" << adv;
  for (const auto& [sig, counts] : observations) {
    os << " [" << sig << ": target=" << counts.first << " other=" << counts.second << "]";
  }
  return os.str();
}

DistinguisherResult score(const std::vector<bool>& truth, const std::vector<bool>& guess,
                          const std::vector<std::string>& observed) {
  if (truth.empty() || truth.size() != guess.size() || truth.size() != observed.size()) {
    throw std::invalid_argument("score: mismatched or empty trial vectors");
  }
  DistinguisherResult r;
  r.trials = truth.size();
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == guess[i]) ++r.correct;
    auto& slot = r.observations[observed[i]];
    (truth[i] ? slot.first : slot.second) += 1;
  }
  r.advantage = std::fabs(2.0 * static_cast<double>(r.correct) / static_cast<double>(r.trials) - 1.0);
  return r;
}

DistinguisherResult attack_failure_linkability(ProtocolId p, std::size_t trials, std::uint64_t seed) {
  Lab lab(seed, 2);
  Adversary adv("capture c " + challenge_kind(p));
  require_complete(lab.run(p, kTarget, &adv), "failure linkability capture");

  adv.load("drop " + init_kind(p) + "\nreplay c to ue");
  const auto truth = balanced_assignment(trials, seed);
  std::vector<bool> guess;
  std::vector<std::string> seen;
  for (bool is_target : truth) {
    const Transcript t = lab.run(p, is_target ? kTarget : kOther, &adv);
    seen.push_back(ue_signature(t));
    guess.push_back(seen.back().find("UeResponse/sync_failure") != std::string::npos);
  }
  return score(truth, guess, seen);
}

DistinguisherResult attack_suci_replay(ProtocolId p, std::size_t trials, std::uint64_t seed) {
  Lab lab(seed, 2);
  Adversary adv("capture s " + init_kind(p));
  require_complete(lab.run(p, kTarget, &adv), "SUCI replay capture");

  adv.load("substitute " + init_kind(p) + " with s");
  const auto truth = balanced_assignment(trials, seed);
  std::vector<bool> guess;
  std::vector<std::string> seen;
  for (bool is_target : truth) {
    const Transcript t = lab.run(p, is_target ? kTarget : kOther, &adv);
    seen.push_back(ue_signature(t));
    const std::string& sig = seen.back();
    guess.push_back(sig.find("UeResponse/res") != std::string::npos || sig.find("M5") != std::string::npos);
  }
  return score(truth, guess, seen);
}

bool SqnInference::all_match() const {
  if (deltas.empty()) return false;
  for (const auto& d : deltas) {
    if (d.recovered != d.truth) return false;
  }
  return true;
}

SqnInference attack_sqn_inference(ProtocolId p, std::size_t replays, std::uint64_t seed) {
  if (p != ProtocolId::baseline) {
    throw StructurallyInapplicable("protocol " + std::string(wire::protocol_name(p)) +
                                   " has no concealed SQN field to replay against");
  }
  Lab lab(seed, 1);
  Adversary adv("capture c SnChallenge");
  require_complete(lab.run(p, kTarget, &adv), "SQN inference capture");

  struct Sample {
    std::uint64_t conc;
    std::uint64_t sqn_ue;
  };
  std::vector<Sample> samples;
  for (std::size_t i = 0; i < replays; ++i) {
    adv.load("drop AttachRequest\nreplay c to ue");
    const std::uint64_t truth = lab.ue(kTarget).sqn;
    const Transcript t = lab.run(p, kTarget, &adv);
    std::optional<std::uint64_t> conc;
    for (const auto& m : t.sent_by(Party::ue)) {
      const auto* r = std::get_if<wire::UeResponse>(&m);
      if (r && r->kind == wire::ResponseKind::sync_failure) conc = aka::sqn_decode(r->autn_star.conc);
    }
    if (!conc) throw std::logic_error("replayed challenge did not provoke a re-synchronization request");
    samples.push_back({*conc, truth});

    adv.clear_rules();
    for (std::size_t g = 0; g < 1 + i % 3; ++g) require_complete(lab.run(p, kTarget, &adv), "SQN advance");
  }

  SqnInference out;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    out.deltas.push_back({samples[i].conc ^ samples[i + 1].conc, samples[i].sqn_ue ^ samples[i + 1].sqn_ue});
  }
  return out;
}

std::vector<bool> pfs_game(ProtocolId p, std::size_t sessions, std::uint64_t seed) {
  Lab lab(seed, 1);
  std::vector<bool> recovered;
  for (std::size_t i = 0; i < sessions; ++i) {
    const Transcript t = lab.run(p, kTarget);
    require_complete(t, "PFS game");
    const aka::EavesdropperView view{p, t.open_messages(), t.id_sn};
    const auto r = aka::recompute_from_compromise(view, lab.ue(kTarget).k, lab.hn().keys.sk);
    recovered.push_back(r.kseaf.has_value() && t.ue.kseaf.has_value() && *r.kseaf == *t.ue.kseaf);
  }
  return recovered;
}

}  // namespace akalab::netlab
