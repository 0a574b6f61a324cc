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

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "akalab/netlab/simulator.hpp"

namespace akalab::netlab {

// advantage = |2 * correct / trials - 1|
struct DistinguisherResult {
  std::size_t trials = 0;
  std::size_t correct = 0;
  double advantage = 0.0;
  // Observation signature -> (trials with target, trials with other).
  std::map<std::string, std::pair<std::size_t, std::size_t>> observations;

  std::string summary() const;
};

DistinguisherResult score(const std::vector<bool>& truth, const std::vector<bool>& guess,
                          const std::vector<std::string>& observed);

class StructurallyInapplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Subscriber 0 is the target and subscriber 1 the other one in every
// experiment below. Trials use a shuffled half/half assignment.

// Records one honest challenge to the target, then replays it to whichever
// subscriber the trial selects. Guess "target" iff the reply is a
// re-synchronization request.
DistinguisherResult attack_failure_linkability(ProtocolId p, std::size_t trials, std::uint64_t seed);

// Records the target's initiation, then substitutes it into a fresh session
// of the selected subscriber. Guess "target" iff the subscriber answers the
// resulting challenge.
DistinguisherResult attack_suci_replay(ProtocolId p, std::size_t trials, std::uint64_t seed);

struct SqnDelta {
  std::uint64_t recovered = 0;  // CONC*_i xor CONC*_{i+1}
  std::uint64_t truth = 0;      // SQN_UE_i xor SQN_UE_{i+1}
};

struct SqnInference {
  std::vector<SqnDelta> deltas;
  bool all_match() const;
};

// Replays one recorded challenge to the target `replays` times with honest
// sessions in between and XORs consecutive concealed SQNs. Throws
// StructurallyInapplicable for protocols without a concealed SQN.
SqnInference attack_sqn_inference(ProtocolId p, std::size_t replays, std::uint64_t seed);

// Runs `sessions` honest sessions and asks the compromise oracle for each
// anchor key. Entry i is true iff session i's key was recovered.
std::vector<bool> pfs_game(ProtocolId p, std::size_t sessions, std::uint64_t seed);

}  // namespace akalab::netlab
