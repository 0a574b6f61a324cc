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

#include "akalab/bench/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "akalab/crypto/rng.hpp"

namespace akalab::bench {

namespace {

constexpr Party kParties[] = {Party::ue, Party::sn, Party::hn};

OpCounters ops(std::uint64_t h, std::uint64_t m, std::uint64_t enc, std::uint64_t dec, std::uint64_t x,
               std::uint64_t add, std::uint64_t rng) {
  return {.hash_ops = h, .scalar_mults = m, .sym_encs = enc, .sym_decs = dec, .xors = x, .adds = add, .rng_draws = rng};
}

// Byte offsets of the MAC the UE checks, within the challenge body.
constexpr std::size_t kAutnMacOffset = 32 + 6;
constexpr std::size_t kMacStarOffset = 0;

std::string case3_script(ProtocolId p) {
  return p == ProtocolId::baseline ? "flip SnChallenge " + std::to_string(kAutnMacOffset)
                                   : "flip M4 " + std::to_string(kMacStarOffset);
}

}  // namespace

std::string_view case_name(Case c) {
  switch (c) {
    case Case::c1:
      return "case1";
    case Case::c2:
      return "case2";
    case Case::c3:
      return "case3";
  }
  return "?";
}

Case parse_case(std::string_view s) {
  if (s == "1" || s == "case1") return Case::c1;
  if (s == "2" || s == "case2") return Case::c2;
  if (s == "3" || s == "case3") return Case::c3;
  throw std::invalid_argument("unknown case '" + std::string(s) + "' (expected 1, 2 or 3)");
}

const OpCounters& Budget::at(Party p) const {
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

std::optional<Budget> published_budget(ProtocolId p, Case c) {
  if (p == ProtocolId::baseline) {
    switch (c) {
      case Case::c1:
        return Budget{ops(8, 2, 1, 0, 1, 1, 1), ops(1, 0, 0, 0, 0, 0, 0), ops(9, 1, 0, 1, 1, 1, 1)};
      case Case::c2:
        return Budget{ops(6, 2, 1, 0, 2, 0, 1), ops(1, 0, 0, 0, 0, 0, 0), ops(11, 1, 0, 1, 2, 2, 1)};
      case Case::c3:
        return Budget{ops(4, 2, 1, 0, 1, 0, 1), ops(1, 0, 0, 0, 0, 0, 0), ops(9, 1, 0, 1, 1, 1, 1)};
    }
  }
  const std::uint64_t m_ue = p == ProtocolId::p2 ? 3 : 2;
  const std::uint64_t m_hn = p == ProtocolId::p2 ? 3 : 1;
  switch (c) {
    case Case::c1:
      return Budget{ops(10, m_ue, 1, 0, 0, 0, 1), ops(2, 0, 0, 0, 0, 0, 0), ops(11, m_hn, 0, 1, 0, 0, 1)};
    case Case::c2:
      return std::nullopt;
    case Case::c3:
      return Budget{ops(8, m_ue, 1, 0, 0, 0, 1), ops(2, 0, 0, 0, 0, 0, 0), ops(10, m_hn, 0, 1, 0, 0, 1)};
  }
  return std::nullopt;
}

std::string CellCheck::diff() const {
  std::ostringstream os;
  auto field = [&](const char* name, std::uint64_t e, std::uint64_t o) {
    if (e != o) os << (os.tellp() > 0 ? ", " : "") << name << " expected " << e << " got " << o;
  };
  field("hash", expected.hash_ops, observed.hash_ops);
  field("mult", expected.scalar_mults, observed.scalar_mults);
  field("enc", expected.sym_encs, observed.sym_encs);
  field("dec", expected.sym_decs, observed.sym_decs);
  field("xor", expected.xors, observed.xors);
  field("add", expected.adds, observed.adds);
  field("rng", expected.rng_draws, observed.rng_draws);
  return os.str();
}

bool CostReport::pass() const {
  return std::all_of(cells.begin(), cells.end(), [](const CellCheck& c) { return c.pass(); });
}

CostReport audit_counts(ProtocolId p, Case c, std::size_t trials, std::uint64_t seed) {
  const auto budget = published_budget(p, c);
  if (!budget) {
    throw std::invalid_argument(std::string(case_name(c)) + " does not apply to protocol " +
                                std::string(wire::protocol_name(p)));
  }
  if (trials == 0) throw std::invalid_argument("trials must be positive");

  netlab::Lab lab(seed, 1);
  netlab::Adversary adv;
  aka::SessionOptions opts;
  if (c == Case::c3) adv.load(case3_script(p));
  if (c == Case::c2) opts.restart_after_sync_failure = false;

  CostReport r;
  r.protocol = p;
  r.kase = c;
  r.trials = trials;
  for (Party party : kParties) r.cells.push_back({party, budget->at(party), {}, 0});

  for (std::size_t i = 0; i < trials; ++i) {
    if (c == Case::c2) {
      // HN falls back to the UE's counter, as after restoring a stale backup.
      lab.hn().db.set_sqn(lab.ue(0).supi, lab.ue(0).sqn);
    }
    const netlab::Transcript t = lab.run(p, 0, &adv, opts);
    if (i == 0) {
      for (const auto& e : t.events) {
        if (e.kind == netlab::EventKind::dropped) continue;
        (e.link == netlab::Link::open ? r.open_frames : r.secure_frames) += 1;
      }
    }
    for (auto& cell : r.cells) {
      const OpCounters& got = t.view(cell.party).ops;
      if (got != cell.expected) {
        if (cell.mismatches == 0) cell.observed = got;
        ++cell.mismatches;
      } else if (i == 0) {
        cell.observed = got;
      }
    }
  }
  return r;
}

std::string_view scenario_name(Scenario s) { return s == Scenario::happy ? "happy" : "resync"; }

MessageAudit audit_messages(ProtocolId p, Scenario s, std::uint64_t seed) {
  if (s == Scenario::resync && p != ProtocolId::baseline) {
    throw std::invalid_argument("the resync scenario exists only for the baseline");
  }
  netlab::Lab lab(seed, 1);
  MessageAudit a;
  a.protocol = p;
  a.scenario = s;
  a.expected = p == ProtocolId::baseline ? (s == Scenario::happy ? 9 : 13) : 7;
  if (s == Scenario::resync) {
    lab.run(p, 0);
    lab.hn().db.set_sqn(lab.ue(0).supi, aka::SubscriberDb::kInitialSqn);
  }
  const netlab::Transcript t = lab.run(p, 0);
  a.observed = t.protocol_frames();
  if (!a.pass()) a.transcript = t.render();
  return a;
}

double PartyTiming::at(Party p) const {
  switch (p) {
    case Party::ue:
      return ue_us;
    case Party::sn:
      return sn_us;
    case Party::hn:
      return hn_us;
  }
  return 0;
}

const TimingRow* TimingReport::row(ProtocolId p) const {
  for (const auto& r : rows) {
    if (r.protocol == p) return &r;
  }
  return nullptr;
}

bool TimingReport::pass() const {
  return std::all_of(ordinals.begin(), ordinals.end(), [](const Ordinal& o) { return o.pass; });
}

namespace {

using Clock = std::chrono::steady_clock;

// Per-party handler time for one honest session, in microseconds.
PartyTiming time_session(ProtocolId p, aka::UeProfile& ue, aka::HnContext& hn, const aka::SnConfig& sn,
                         std::uint64_t seed, std::uint64_t index) {
  auto ue_node = aka::make_ue(p, ue, crypto::Rng::seeded(seed, "ue", index));
  auto sn_node = aka::make_sn(p, sn);
  auto hn_node = aka::make_hn(p, hn, crypto::Rng::seeded(seed, "hn", index));
  aka::Node* nodes[] = {ue_node.get(), sn_node.get(), hn_node.get()};
  double spent[3] = {0, 0, 0};

  struct Pending {
    Party from, to;
    wire::Message msg;
  };
  std::deque<Pending> queue;
  auto push = [&](Party from, aka::Outbox out) {
    for (auto& o : out) queue.push_back({from, o.to, std::move(o.msg)});
  };

  auto t0 = Clock::now();
  aka::Outbox first = ue_node->start();
  spent[0] += std::chrono::duration<double, std::micro>(Clock::now() - t0).count();
  push(Party::ue, std::move(first));
  while (!queue.empty()) {
    Pending m = std::move(queue.front());
    queue.pop_front();
    const auto idx = static_cast<std::size_t>(m.to);
    t0 = Clock::now();
    aka::Outbox out = nodes[idx]->on_message(m.from, m.msg);
    spent[idx] += std::chrono::duration<double, std::micro>(Clock::now() - t0).count();
    push(m.to, std::move(out));
  }
  if (ue_node->outcome() != aka::Outcome::complete) throw std::logic_error("timed session did not complete");
  return {spent[0], spent[1], spent[2]};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

double clock_tick_us() {
  double best = 1e9;
  for (int i = 0; i < 200; ++i) {
    const auto a = Clock::now();
    auto b = Clock::now();
    while (b == a) b = Clock::now();
    best = std::min(best, std::chrono::duration<double, std::micro>(b - a).count());
  }
  return best;
}

Ordinal ratio_in(std::string name, double value, double lo, double hi) {
  char bound[64];
  std::snprintf(bound, sizeof bound, "[%.2f, %.2f]", lo, hi);
  return {std::move(name), value, bound, value >= lo && value <= hi};
}

}  // namespace

TimingReport timing_compare(const std::vector<ProtocolId>& protocols, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("samples must be positive");
  netlab::Lab lab(seed, 1);
  const double margin = 100 * clock_tick_us();
  constexpr std::size_t kMaxBatch = 1024;

  TimingReport report;
  std::uint64_t index = 0;
  for (ProtocolId p : protocols) {
    // Warm-up.
    for (int i = 0; i < 20; ++i) time_session(p, lab.ue(0), lab.hn(), lab.sn(), seed, index++);

    TimingRow row{p, {}, samples, 1};
    for (;;) {
      std::vector<double> ue, sn, hn;
      for (std::size_t s = 0; s < samples; ++s) {
        PartyTiming sum;
        for (std::size_t b = 0; b < row.batch; ++b) {
          const PartyTiming t = time_session(p, lab.ue(0), lab.hn(), lab.sn(), seed, index++);
          sum.ue_us += t.ue_us;
          sum.sn_us += t.sn_us;
          sum.hn_us += t.hn_us;
        }
        const auto n = static_cast<double>(row.batch);
        ue.push_back(sum.ue_us / n);
        sn.push_back(sum.sn_us / n);
        hn.push_back(sum.hn_us / n);
      }
      row.median = {median(ue), median(sn), median(hn)};
      const double smallest = std::min({row.median.ue_us, row.median.sn_us, row.median.hn_us});
      if (smallest * static_cast<double>(row.batch) >= margin || row.batch >= kMaxBatch) break;
      row.batch *= 2;
    }
    report.rows.push_back(row);
  }

  const TimingRow* base = report.row(ProtocolId::baseline);
  const TimingRow* p1 = report.row(ProtocolId::p1);
  const TimingRow* p2 = report.row(ProtocolId::p2);
  if (p1 && p2) {
    const double v = p2->median.hn_us / p1->median.hn_us;
    report.ordinals.push_back({"hn_p2_over_p1", v, "> 1.00", v > 1.0});
  }
  if (base && p1) {
    report.ordinals.push_back(ratio_in("ue_p1_over_baseline", p1->median.ue_us / base->median.ue_us, 0.9, 1.3));
    report.ordinals.push_back(
        ratio_in("sn_p1_over_baseline", p1->median.sn_us / base->median.sn_us, 1.0 / 3.0, 3.0));
  }
  if (base && p2) {
    report.ordinals.push_back(
        ratio_in("sn_p2_over_baseline", p2->median.sn_us / base->median.sn_us, 1.0 / 3.0, 3.0));
  }
  return report;
}

std::string render(const std::vector<CostReport>& costs, const std::vector<MessageAudit>& messages,
                   const TimingReport* timing) {
  std::ostringstream os;
  char line[256];
  std::ostringstream kv;

  if (!costs.empty()) {
    os << "OPERATION COUNTS (per session)\n";
    std::snprintf(line, sizeof line, "%-9s %-6s %-5s %5s %5s %4s %4s %4s %4s %4s  %-6s %s\n", "protocol", "case",
                  "party", "hash", "mult", "enc", "dec", "xor", "add", "rng", "status", "detail");
    os << line;
    for (const auto& r : costs) {
      for (const auto& c : r.cells) {
        const auto& o = c.observed;
        std::snprintf(line, sizeof line, "%-9s %-6s %-5s %5llu %5llu %4llu %4llu %4llu %4llu %4llu  %-6s ",
                      std::string(wire::protocol_name(r.protocol)).c_str(), std::string(case_name(r.kase)).c_str(),
                      std::string(aka::party_name(c.party)).c_str(), (unsigned long long)o.hash_ops,
                      (unsigned long long)o.scalar_mults, (unsigned long long)o.sym_encs,
                      (unsigned long long)o.sym_decs, (unsigned long long)o.xors, (unsigned long long)o.adds,
                      (unsigned long long)o.rng_draws, c.pass() ? "PASS" : "FAIL");
        os << line;
        if (!c.pass()) os << c.diff() << " (" << c.mismatches << "/" << r.trials << " trials)";
        os << "\n";
        kv << "counts protocol=" << wire::protocol_name(r.protocol) << " case=" << static_cast<int>(r.kase)
           << " party=" << aka::party_name(c.party) << " trials=" << r.trials << " mismatches=" << c.mismatches
           << " hash=" << o.hash_ops << " mult=" << o.scalar_mults << " enc=" << o.sym_encs
           << " dec=" << o.sym_decs << " xor=" << o.xors << " add=" << o.adds << " rng=" << o.rng_draws
           << " pass=" << (c.pass() ? 1 : 0) << "\n";
      }
      kv << "frames protocol=" << wire::protocol_name(r.protocol) << " case=" << static_cast<int>(r.kase)
         << " open=" << r.open_frames << " secure=" << r.secure_frames << "\n";
    }
    os << "\n";
  }

  if (!messages.empty()) {
    os << "MESSAGE COUNTS\n";
    std::snprintf(line, sizeof line, "%-9s %-8s %8s %8s  %s\n", "protocol", "scenario", "expected", "observed",
                  "status");
    os << line;
    for (const auto& m : messages) {
      std::snprintf(line, sizeof line, "%-9s %-8s %8zu %8zu  %s\n",
                    std::string(wire::protocol_name(m.protocol)).c_str(),
                    std::string(scenario_name(m.scenario)).c_str(), m.expected, m.observed,
                    m.pass() ? "PASS" : "FAIL");
      os << line;
      if (!m.pass()) os << m.transcript;
      kv << "messages protocol=" << wire::protocol_name(m.protocol) << " scenario=" << scenario_name(m.scenario)
         << " expected=" << m.expected << " observed=" << m.observed << " pass=" << (m.pass() ? 1 : 0) << "\n";
    }
    os << "\n";
  }

  if (timing) {
    os << "MEDIAN HANDLER TIME (microseconds per session)\n";
    std::snprintf(line, sizeof line, "%-9s %10s %10s %10s %8s %6s\n", "protocol", "UE", "SN", "HN", "samples",
                  "batch");
    os << line;
    for (const auto& r : timing->rows) {
      std::snprintf(line, sizeof line, "%-9s %10.2f %10.2f %10.2f %8zu %6zu\n",
                    std::string(wire::protocol_name(r.protocol)).c_str(), r.median.ue_us, r.median.sn_us,
                    r.median.hn_us, r.samples, r.batch);
      os << line;
      kv << "timing protocol=" << wire::protocol_name(r.protocol) << " ue_us=" << r.median.ue_us
         << " sn_us=" << r.median.sn_us << " hn_us=" << r.median.hn_us << " samples=" << r.samples
         << " batch=" << r.batch << "\n";
    }
    for (const auto& o : timing->ordinals) {
      std::snprintf(line, sizeof line, "  %-22s %8.3f  %-14s %s\n", o.name.c_str(), o.value, o.bound.c_str(),
                    o.pass ? "PASS" : "FAIL");
      os << line;
      kv << "ordinal name=" << o.name << " value=" << o.value << " pass=" << (o.pass ? 1 : 0) << "\n";
    }
    os << "\n";
  }

  os << kv.str();
  return os.str();
}

}  // namespace akalab::bench
