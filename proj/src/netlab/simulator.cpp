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

#include "akalab/netlab/simulator.hpp"

#include <deque>
#include <sstream>

#include "akalab/crypto/derive.hpp"
#include "akalab/crypto/rng.hpp"
#include "akalab/wire/codec.hpp"

namespace akalab::netlab {

using crypto::Rng;

std::string_view link_name(Link l) { return l == Link::open ? "open" : "secure"; }

std::string_view event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::delivered:
      return "delivered";
    case EventKind::dropped:
      return "dropped";
    case EventKind::injected:
      return "injected";
    case EventKind::modified:
      return "modified";
    case EventKind::undecodable:
      return "undecodable";
  }
  return "?";
}

namespace {

constexpr std::size_t kSessionOffset = wire::kLengthPrefixLen + 3;
constexpr std::size_t kBodyOffset = wire::kLengthPrefixLen + wire::kHeaderLen;

std::optional<wire::Frame> try_decode(const Bytes& b) {
  try {
    return wire::decode(b);
  } catch (const wire::DecodeError&) {
    return std::nullopt;
  }
}

Link link_between(Party a, Party b) {
  auto is = [&](Party x, Party y) { return (a == x && b == y) || (a == y && b == x); };
  if (is(Party::ue, Party::sn)) return Link::open;
  if (is(Party::sn, Party::hn)) return Link::secure;
  throw ChannelViolation("no link between " + std::string(aka::party_name(a)) + " and " +
                         std::string(aka::party_name(b)));
}

const Match* match_of(const Action& a) {
  if (const auto* c = std::get_if<Capture>(&a)) return &c->match;
  if (const auto* f = std::get_if<Flip>(&a)) return &f->match;
  if (const auto* s = std::get_if<Substitute>(&a)) return &s->match;
  return nullptr;
}

PartyView snapshot(const aka::Node& n) {
  return {n.outcome(), n.anchor_key(), n.ops(), n.supi_view(), n.id_sn_view()};
}

}  // namespace

const PartyView& Transcript::view(Party p) const {
  switch (p) {
    case Party::ue:
      return ue;
    case Party::sn:
      return sn;
    case Party::hn:
      return hn;
  }
  throw std::invalid_argument("party");
}

std::size_t Transcript::protocol_frames() const {
  std::size_t n = 0;
  for (const auto& e : events) {
    if (e.kind == EventKind::dropped || e.kind == EventKind::undecodable) continue;
    if (auto f = try_decode(e.frame); f && wire::is_protocol_message(f->msg)) ++n;
  }
  return n;
}

std::vector<wire::Message> Transcript::open_messages() const {
  std::vector<wire::Message> out;
  for (const auto& e : events) {
    if (e.link != Link::open) continue;
    if (auto f = try_decode(e.frame)) out.push_back(std::move(f->msg));
  }
  return out;
}

std::vector<wire::Message> Transcript::sent_by(Party p) const {
  std::vector<wire::Message> out;
  for (const auto& e : events) {
    if (e.from != p || e.kind == EventKind::injected || e.kind == EventKind::undecodable) continue;
    if (auto f = try_decode(e.frame)) out.push_back(std::move(f->msg));
  }
  return out;
}

bool Transcript::anchor_key_exposed() const {
  for (const auto& e : events) {
    if (e.link != Link::open) continue;
    if (auto f = try_decode(e.frame); f && wire::carries_anchor_key(f->msg)) return true;
    for (const auto* v : {&ue, &sn, &hn}) {
      if (!v->kseaf) continue;
      if (std::search(e.frame.begin(), e.frame.end(), v->kseaf->begin(), v->kseaf->end()) != e.frame.end()) {
        return true;
      }
    }
  }
  return false;
}

std::string Transcript::render() const {
  std::ostringstream os;
  os << "protocol=" << wire::protocol_name(protocol) << " session=" << to_hex(session) << " id_sn=" << id_sn
     << "\n";
  for (const auto& e : events) {
    os << e.step << '\t' << link_name(e.link) << '\t' << aka::party_name(e.from) << "->" << aka::party_name(e.to)
       << '\t' << event_kind_name(e.kind) << '\t';
    if (auto f = try_decode(e.frame)) {
      os << wire::message_name(f->msg);
      if (const auto* r = std::get_if<wire::UeResponse>(&f->msg)) os << '/' << static_cast<int>(r->kind);
      if (const auto* n = std::get_if<wire::Notice>(&f->msg)) os << '/' << wire::notice_name(n->code);
    } else {
      os << "?";
    }
    os << '\t' << e.frame.size() << "B\n";
  }
  for (auto [name, v] : {std::pair{"UE", &ue}, {"SN", &sn}, {"HN", &hn}}) {
    os << name << ": " << aka::outcome_name(v->outcome) << " ops{" << v->ops.to_string() << "}";
    if (v->kseaf) os << " kseaf#" << crypto::key_fingerprint(*v->kseaf);
    os << "\n";
  }
  return os.str();
}

Bytes Transcript::export_frames() const {
  Bytes out;
  for (const auto& e : events) out.insert(out.end(), e.frame.begin(), e.frame.end());
  return out;
}

Transcript run_session(const RunConfig& cfg, aka::UeProfile& ue, aka::HnContext& hn, const aka::SnConfig& sn) {
  auto ue_node = aka::make_ue(cfg.protocol, ue, Rng::seeded(cfg.seed, "ue", cfg.index), cfg.options);
  auto sn_node = aka::make_sn(cfg.protocol, sn, cfg.options);
  auto hn_node = aka::make_hn(cfg.protocol, hn, Rng::seeded(cfg.seed, "hn", cfg.index));
  auto node = [&](Party p) -> aka::Node& {
    switch (p) {
      case Party::ue:
        return *ue_node;
      case Party::sn:
        return *sn_node;
      case Party::hn:
        return *hn_node;
    }
    throw std::invalid_argument("party");
  };

  Transcript t;
  t.protocol = cfg.protocol;
  t.session = Rng::seeded(cfg.seed, "session", cfg.index).bytes<wire::kSessionIdLen>();
  t.id_sn = sn.id_sn;

  struct InFlight {
    Party from;
    Party to;
    Bytes frame;
    bool injected;
  };
  std::deque<InFlight> queue;

  auto emit = [&](Party from, aka::Outbox out) {
    for (auto& o : out) {
      const Link link = link_between(from, o.to);
      if (link == Link::open && wire::carries_anchor_key(o.msg)) {
        throw ChannelViolation(std::string(wire::message_name(o.msg)) + " may not use the open link");
      }
      queue.push_back({from, o.to, wire::encode({wire::kWireVersion, cfg.protocol, t.session, std::move(o.msg)}),
                       false});
    }
  };

  auto restamped = [&](const std::string& slot) {
    auto b = cfg.adversary->slot(slot);
    if (!b) throw ScheduleError("adversary slot '" + slot + "' is empty");
    if (b->size() >= kSessionOffset + wire::kSessionIdLen) {
      std::copy(t.session.begin(), t.session.end(), b->begin() + kSessionOffset);
    }
    return *b;
  };

  const std::vector<Action> none;
  const auto& actions = cfg.adversary ? cfg.adversary->actions() : none;
  std::vector<bool> spent(actions.size(), false);

  auto inject = [&](const Replay& r) {
    const Party from = r.to == Party::ue ? Party::sn : Party::ue;
    queue.push_back({from, r.to, restamped(r.slot), true});
  };

  emit(Party::ue, ue_node->start());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (const auto* r = std::get_if<Replay>(&actions[i]); r && !r->after) {
      inject(*r);
      spent[i] = true;
    }
  }

  std::size_t step = 0;
  while (!queue.empty()) {
    if (step >= cfg.step_budget) {
      std::ostringstream os;
      os << "step budget " << cfg.step_budget << " exhausted; pending:";
      for (const auto& q : queue) {
        auto f = try_decode(q.frame);
        os << ' ' << aka::party_name(q.from) << "->" << aka::party_name(q.to) << ':'
           << (f ? wire::message_name(f->msg) : "?");
      }
      throw ScheduleError(os.str());
    }
    InFlight item = std::move(queue.front());
    queue.pop_front();
    ++step;

    const Link link = link_between(item.from, item.to);
    EventKind kind = item.injected ? EventKind::injected : EventKind::delivered;
    const auto original = try_decode(item.frame);
    bool dropped = false;

    for (std::size_t i = 0; i < actions.size() && !dropped && original; ++i) {
      const Action& a = actions[i];
      if (const auto* d = std::get_if<Drop>(&a)) {
        if (d->match.matches(original->msg)) dropped = true;
        continue;
      }
      if (item.injected) continue;
      const Match* m = match_of(a);
      if (!m || !m->matches(original->msg)) continue;
      if (link == Link::secure) {
        throw ChannelViolation("the secure link only permits drop; rule matched " +
                               std::string(wire::message_name(original->msg)));
      }
      if (const auto* c = std::get_if<Capture>(&a)) {
        if (!spent[i]) {
          cfg.adversary->set_slot(c->slot, item.frame);
          spent[i] = true;
        }
      } else if (const auto* f = std::get_if<Flip>(&a)) {
        const std::size_t at = kBodyOffset + f->offset;
        if (at >= item.frame.size()) throw ScheduleError("flip offset beyond frame body");
        item.frame[at] ^= 0x01;
        kind = EventKind::modified;
      } else if (const auto* s = std::get_if<Substitute>(&a)) {
        item.frame = restamped(s->slot);
        kind = EventKind::modified;
      }
    }

    if (dropped) {
      t.events.push_back({step, link, item.from, item.to, EventKind::dropped, item.frame});
    } else if (auto f = try_decode(item.frame)) {
      t.events.push_back({step, link, item.from, item.to, kind, item.frame});
      emit(item.to, node(item.to).on_message(item.from, f->msg));
    } else {
      t.events.push_back({step, link, item.from, item.to, EventKind::undecodable, item.frame});
    }

    if (link == Link::open && !item.injected && original) {
      for (std::size_t i = 0; i < actions.size(); ++i) {
        const auto* r = std::get_if<Replay>(&actions[i]);
        if (r && r->after && !spent[i] && r->after->matches(original->msg)) {
          inject(*r);
          spent[i] = true;
        }
      }
    }
  }

  for (Party p : {Party::ue, Party::sn, Party::hn}) node(p).expire();
  t.ue = snapshot(*ue_node);
  t.sn = snapshot(*sn_node);
  t.hn = snapshot(*hn_node);
  return t;
}

namespace {

crypto::KeyPair lab_keys(std::uint64_t seed) {
  auto rng = Rng::seeded(seed, "hn-keys");
  return crypto::ecies_keygen(crypto::CurveId::secp256r1, rng);
}

}  // namespace

Lab::Lab(std::uint64_t seed, std::size_t subscribers) : seed_(seed), hn_{lab_keys(seed), {}, "hn.akalab"} {
  auto rng = Rng::seeded(seed, "provision");
  for (std::size_t i = 0; i < subscribers; ++i) {
    char supi[32];
    std::snprintf(supi, sizeof supi, "imsi-00101%010zu", i + 1);
    const Key k = rng.bytes<32>();
    hn_.db.add(supi, k);
    ues_.push_back(aka::UeProfile{supi, k, hn_.keys.pk, hn_.id_hn, sn_.id_sn, 0});
  }
}

Transcript Lab::run(ProtocolId p, std::size_t ue, Adversary* adv, aka::SessionOptions opts) {
  RunConfig cfg;
  cfg.protocol = p;
  cfg.seed = seed_;
  cfg.index = next_index_++;
  cfg.options = opts;
  cfg.adversary = adv;
  return run_session(cfg, ues_.at(ue), hn_, sn_);
}

}  // namespace akalab::netlab
