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
#include <optional>
#include <string>
#include <vector>

#include "akalab/netlab/simulator.hpp"

namespace akalab::bench {

using crypto::OpCounters;
using netlab::Party;
using wire::ProtocolId;

// 1: success. 2: stale SQN at the UE (baseline only). 3: MAC check fails at the UE.
enum class Case : std::uint8_t { c1 = 1, c2 = 2, c3 = 3 };
std::string_view case_name(Case c);
Case parse_case(std::string_view s);

struct Budget {
  OpCounters ue, sn, hn;
  const OpCounters& at(Party p) const;
};

// Published per-party operation budgets. nullopt where the case does not
// exist for the protocol.
std::optional<Budget> published_budget(ProtocolId p, Case c);

struct CellCheck {
  Party party = Party::ue;
  OpCounters expected;
  OpCounters observed;  // first mismatching trial, else trial 0
  std::size_t mismatches = 0;
  bool pass() const { return mismatches == 0; }
  std::string diff() const;
};

struct CostReport {
  ProtocolId protocol = ProtocolId::p1;
  Case kase = Case::c1;
  std::size_t trials = 0;
  std::size_t open_frames = 0;    // per session, from trial 0
  std::size_t secure_frames = 0;  // per session, from trial 0
  std::vector<CellCheck> cells;   // ue, sn, hn
  bool pass() const;
};

// Runs `trials` seeded sessions of the case and compares every party's
// counters with the published budget. Throws std::invalid_argument for a
// case the protocol does not have.
CostReport audit_counts(ProtocolId p, Case c, std::size_t trials, std::uint64_t seed = 1);

enum class Scenario : std::uint8_t { happy, resync };
std::string_view scenario_name(Scenario s);

struct MessageAudit {
  ProtocolId protocol = ProtocolId::p1;
  Scenario scenario = Scenario::happy;
  std::size_t expected = 0;
  std::size_t observed = 0;
  std::string transcript;  // rendered on mismatch
  bool pass() const { return expected == observed; }
};

// Throws std::invalid_argument for resync outside the baseline.
MessageAudit audit_messages(ProtocolId p, Scenario s, std::uint64_t seed = 1);

struct PartyTiming {
  double ue_us = 0, sn_us = 0, hn_us = 0;
  double at(Party p) const;
};

struct TimingRow {
  ProtocolId protocol = ProtocolId::p1;
  PartyTiming median;
  std::size_t samples = 0;
  std::size_t batch = 1;  // sessions per sample
};

struct Ordinal {
  std::string name;
  double value = 0;
  std::string bound;
  bool pass = false;
};

struct TimingReport {
  std::vector<TimingRow> rows;
  std::vector<Ordinal> ordinals;  // only when all three protocols ran
  const TimingRow* row(ProtocolId p) const;
  bool pass() const;
};

// Median per-party handler time over `samples` honest sessions driven
// directly through the state machines, without encoding. Samples batch more
// sessions while a median is below the clock's resolution margin.
TimingReport timing_compare(const std::vector<ProtocolId>& protocols, std::size_t samples, std::uint64_t seed = 1);

// Fixed-width tables followed by key=value lines.
std::string render(const std::vector<CostReport>& costs, const std::vector<MessageAudit>& messages,
                   const TimingReport* timing);

}  // namespace akalab::bench
