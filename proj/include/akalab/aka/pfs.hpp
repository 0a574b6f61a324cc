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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "akalab/aka/common.hpp"

namespace akalab::aka {

class MalformedTranscript : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Everything a passive eavesdropper on the UE-SN link keeps from one
// session, plus the serving network name, which is public.
struct EavesdropperView {
  ProtocolId protocol = ProtocolId::baseline;
  std::vector<wire::Message> open_messages;
  std::string id_sn;
};

struct Recovery {
  std::optional<Key> kseaf;  // nullopt: insufficient information
  std::string detail;
};

// Best-effort anchor-key recovery by an attacker holding both long-term
// secrets (k and sk_HN). Baseline unmasks SQN from CONC; protocol 1 opens
// the SUCI to get R and k_UE; protocol 2 additionally needs a DH exponent
// and searches every 32-byte window of the transcript for one.
Recovery recompute_from_compromise(const EavesdropperView& view, const Key& k, const crypto::Scalar& sk_hn);

}  // namespace akalab::aka
