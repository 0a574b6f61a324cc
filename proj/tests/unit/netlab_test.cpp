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

#include <gtest/gtest.h>

#include <set>

#include "akalab/netlab/experiments.hpp"
#include "akalab/netlab/simulator.hpp"
#include "akalab/wire/codec.hpp"

namespace akalab::netlab {
namespace {

constexpr ProtocolId kAll[] = {ProtocolId::baseline, ProtocolId::p1, ProtocolId::p2};

std::string name_of(const ::testing::TestParamInfo<ProtocolId>& info) {
  return std::string(wire::protocol_name(info.param));
}

class PerProtocol : public ::testing::TestWithParam<ProtocolId> {};

TEST_P(PerProtocol, HonestSessionAgreesOnKey) {
  Lab lab(7);
  const Transcript t = lab.run(GetParam(), 0);
  ASSERT_EQ(t.ue.outcome, Outcome::complete) << t.render();
  EXPECT_EQ(t.sn.outcome, Outcome::complete);
  EXPECT_EQ(t.hn.outcome, Outcome::complete);
  ASSERT_TRUE(t.ue.kseaf);
  EXPECT_EQ(t.ue.kseaf, t.sn.kseaf);
  EXPECT_EQ(t.ue.kseaf, t.hn.kseaf);
  EXPECT_EQ(t.sn.supi, lab.ue(0).supi);
  EXPECT_EQ(t.ue.id_sn, t.sn.id_sn);
  EXPECT_FALSE(t.anchor_key_exposed());
}

TEST_P(PerProtocol, SameSeedSameTranscript) {
  Lab a(99), b(99);
  for (int i = 0; i < 3; ++i) {
    const Transcript ta = a.run(GetParam(), i % 2);
    const Transcript tb = b.run(GetParam(), i % 2);
    EXPECT_EQ(ta, tb);
    EXPECT_EQ(ta.export_frames(), tb.export_frames());
  }
  Lab c(100);
  EXPECT_NE(c.run(GetParam(), 0).export_frames(), Lab(99).run(GetParam(), 0).export_frames());
}

TEST_P(PerProtocol, KeysNeverRepeatAcrossSessions) {
  Lab lab(11);
  std::set<Key> keys;
  for (int i = 0; i < 40; ++i) {
    const Transcript t = lab.run(GetParam(), i % 2);
    ASSERT_EQ(t.ue.outcome, Outcome::complete);
    EXPECT_TRUE(keys.insert(*t.ue.kseaf).second);
  }
}

TEST_P(PerProtocol, DroppingTheChallengeSilencesEveryone) {
  Lab lab(3);
  Adversary adv(GetParam() == ProtocolId::baseline ? "drop SnChallenge" : "drop M4");
  const Transcript t = lab.run(GetParam(), 0, &adv);
  EXPECT_EQ(t.ue.outcome, Outcome::silent_abort);
  EXPECT_EQ(t.sn.outcome, Outcome::silent_abort);
  EXPECT_FALSE(t.ue.kseaf);
  // Nothing after the challenge: the UE only ever sent its initiation.
  EXPECT_EQ(t.sent_by(Party::ue).size(), 1u);
}

TEST_P(PerProtocol, FlippedChallengeMac) {
  Lab lab(5);
  // MAC inside AUTN sits after R (32) and CONC (6); MAC* leads M4.
  Adversary adv(GetParam() == ProtocolId::baseline ? "flip SnChallenge 38" : "flip M4 0");
  const Transcript t = lab.run(GetParam(), 0, &adv);
  if (GetParam() == ProtocolId::baseline) {
    EXPECT_EQ(t.ue.outcome, Outcome::mac_failure) << t.render();
  } else {
    EXPECT_EQ(t.ue.outcome, Outcome::silent_abort) << t.render();
    EXPECT_EQ(t.sent_by(Party::ue).size(), 1u);
  }
}

TEST_P(PerProtocol, SecureLinkAcceptsOnlyDrops) {
  Lab lab(1);
  const std::string secure_kind = GetParam() == ProtocolId::baseline ? "HnChallenge" : "M3";
  Adversary flip("flip " + secure_kind + " 0");
  EXPECT_THROW(lab.run(GetParam(), 0, &flip), ChannelViolation);
  Adversary cap("capture x " + secure_kind);
  EXPECT_THROW(lab.run(GetParam(), 0, &cap), ChannelViolation);
  Adversary drop("drop " + secure_kind);
  const Transcript t = lab.run(GetParam(), 0, &drop);
  EXPECT_EQ(t.ue.outcome, Outcome::silent_abort);
}

TEST_P(PerProtocol, PfsGameMatchesExpectedRecovery) {
  const auto r = pfs_game(GetParam(), 10, 21);
  ASSERT_EQ(r.size(), 10u);
  const auto hits = std::count(r.begin(), r.end(), true);
  EXPECT_EQ(hits, GetParam() == ProtocolId::p2 ? 0 : 10);
}

INSTANTIATE_TEST_SUITE_P(All, PerProtocol, ::testing::ValuesIn(kAll), name_of);

TEST(MessageCounts, HappyPaths) {
  Lab lab(2);
  EXPECT_EQ(lab.run(ProtocolId::p1, 0).protocol_frames(), 7u);
  EXPECT_EQ(lab.run(ProtocolId::p2, 0).protocol_frames(), 7u);
  EXPECT_EQ(lab.run(ProtocolId::baseline, 0).protocol_frames(), 9u);
}

TEST(MessageCounts, BaselineResyncIsThirteen) {
  Lab lab(2);
  ASSERT_EQ(lab.run(ProtocolId::baseline, 0).ue.outcome, Outcome::complete);
  // Roll the HN back as if restored from a stale backup.
  lab.hn().db.set_sqn(lab.ue(0).supi, 1);
  const Transcript t = lab.run(ProtocolId::baseline, 0);
  EXPECT_EQ(t.protocol_frames(), 13u) << t.render();
  EXPECT_EQ(t.ue.outcome, Outcome::complete);
  EXPECT_EQ(t.ue.kseaf, t.hn.kseaf);
}

TEST(MessageCounts, UeSeesTheSnFrameCount) {
  Lab lab(2);
  const Transcript t = lab.run(ProtocolId::p1, 0);
  std::optional<std::uint32_t> reported;
  for (const auto& e : t.events) {
    const auto f = wire::decode(e.frame);
    if (const auto* n = std::get_if<wire::Notice>(&f.msg); n && n->code == wire::NoticeCode::complete) {
      reported = n->value;
    }
  }
  EXPECT_EQ(reported, 7u);
}

TEST(Scheduler, StepBudgetReportsPendingQueue) {
  Lab lab(4);
  RunConfig cfg;
  cfg.protocol = ProtocolId::p1;
  cfg.step_budget = 2;
  try {
    run_session(cfg, lab.ue(0), lab.hn(), lab.sn());
    FAIL() << "expected ScheduleError";
  } catch (const ScheduleError& e) {
    EXPECT_NE(std::string(e.what()).find("pending:"), std::string::npos);
  }
}

TEST(Scheduler, ReplayFromEmptySlotIsAnError) {
  Lab lab(4);
  Adversary adv("replay nothing to ue");
  EXPECT_THROW(lab.run(ProtocolId::p1, 0, &adv), ScheduleError);
}

TEST(Script, ParsesAllVerbsAndComments) {
  Adversary adv(
      "# scenario\n"
      "capture a M4   # keep it\n"
      "\n"
      "replay a to ue after M1\n"
      "drop *\n"
      "flip M4 12\n"
      "substitute M1 with a\n");
  ASSERT_EQ(adv.actions().size(), 5u);
  EXPECT_TRUE(std::holds_alternative<Capture>(adv.actions()[0]));
  const auto& r = std::get<Replay>(adv.actions()[1]);
  EXPECT_EQ(r.to, Party::ue);
  ASSERT_TRUE(r.after);
  EXPECT_EQ(r.after->name, "M1");
  EXPECT_EQ(std::get<Flip>(adv.actions()[3]).offset, 12u);
}

TEST(Script, RejectsMalformedLinesWithLineNumber) {
  const char* bad[] = {"capture a", "capture a NoSuchMessage", "replay a to hn", "replay a ue",
                       "flip M4 -1", "flip M4 x", "substitute M1 a", "teleport M1", "replay a to ue before M1"};
  for (const char* line : bad) {
    try {
      Adversary adv(std::string("drop M1\n") + line);
      FAIL() << "accepted: " << line;
    } catch (const ScriptError& e) {
      EXPECT_EQ(e.line(), 2u) << line;
    }
  }
}

TEST(Script, SlotsSurviveReload) {
  Lab lab(8);
  Adversary adv("capture s M1");
  lab.run(ProtocolId::p1, 0, &adv);
  ASSERT_TRUE(adv.slot("s"));
  adv.load("drop M4");
  EXPECT_TRUE(adv.slot("s"));
}

TEST(Attacks, BaselineFailureLinkabilityIsPerfect) {
  const auto r = attack_failure_linkability(ProtocolId::baseline, 60, 1);
  EXPECT_EQ(r.trials, 60u);
  EXPECT_DOUBLE_EQ(r.advantage, 1.0) << r.summary();
}

TEST(Attacks, BaselineSuciReplayIsPerfect) {
  const auto r = attack_suci_replay(ProtocolId::baseline, 60, 1);
  EXPECT_DOUBLE_EQ(r.advantage, 1.0) << r.summary();
}

TEST(Attacks, EnhancedProtocolsGiveOneUniformObservation) {
  for (ProtocolId p : {ProtocolId::p1, ProtocolId::p2}) {
    for (const auto& r : {attack_failure_linkability(p, 60, 2), attack_suci_replay(p, 60, 2)}) {
      EXPECT_LE(r.advantage, 0.15) << r.summary();
      // Target and other produce the same observation, so no rule can do better.
      EXPECT_EQ(r.observations.size(), 1u) << r.summary();
    }
  }
}

TEST(Attacks, SqnInferenceRecoversTrueDeltas) {
  const auto r = attack_sqn_inference(ProtocolId::baseline, 5, 3);
  ASSERT_EQ(r.deltas.size(), 4u);
  EXPECT_TRUE(r.all_match());
  for (const auto& d : r.deltas) EXPECT_NE(d.truth, 0u);
  EXPECT_THROW(attack_sqn_inference(ProtocolId::p1, 2, 3), StructurallyInapplicable);
  EXPECT_THROW(attack_sqn_inference(ProtocolId::p2, 2, 3), StructurallyInapplicable);
}

TEST(Attacks, ScoreIsExact) {
  const auto r = score({true, false, true, false}, {true, true, true, false}, {"a", "a", "b", "c"});
  EXPECT_EQ(r.correct, 3u);
  EXPECT_DOUBLE_EQ(r.advantage, 0.5);
  EXPECT_EQ(r.observations.at("a"), (std::pair<std::size_t, std::size_t>{1, 1}));
  EXPECT_THROW(score({}, {}, {}), std::invalid_argument);
}

}  // namespace
}  // namespace akalab::netlab
