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

#include "akalab/aka/common.hpp"

namespace akalab::aka {

// 5G-AKA subscriber side: SUCI initiation, AUTN check with SQN freshness,
// re-synchronization token on a stale SQN.
class BaselineUe final : public Node {
 public:
  BaselineUe(UeProfile& profile, crypto::Rng rng, SessionOptions opts = {});

  Party role() const override { return Party::ue; }
  ProtocolId protocol() const override { return ProtocolId::baseline; }
  Outbox start() override;
  Outbox on_message(Party from, const wire::Message& msg) override;

  bool finished() const override { return phase_ == Phase::done; }

  wire::AttachRequest attach();
  wire::UeResponse check_challenge(const wire::SnChallenge& c);

  // Protocol frame count reported by the SN's completion notice.
  std::optional<std::uint32_t> reported_frames() const { return reported_; }

 private:
  enum class Phase { idle, awaiting_challenge, awaiting_confirm, done };

  UeProfile& profile_;
  crypto::Rng rng_;
  SessionOptions opts_;
  Phase phase_ = Phase::idle;
  bool resynced_ = false;
  std::optional<std::uint32_t> reported_;
};

class BaselineSn final : public Node {
 public:
  explicit BaselineSn(SnConfig cfg, SessionOptions opts = {});

  Party role() const override { return Party::sn; }
  ProtocolId protocol() const override { return ProtocolId::baseline; }
  Outbox on_message(Party from, const wire::Message& msg) override;

  bool finished() const override { return phase_ == Phase::done; }

  // Forwards RES iff hash(R, RES) matches the stored HXRES.
  std::optional<wire::SnResult> check(const wire::UeResponse& r);

  std::uint32_t frames_seen() const { return frames_; }

 private:
  enum class Phase { awaiting_attach, awaiting_challenge, awaiting_response, awaiting_result, awaiting_confirm, done };

  Outbox finish();
  Outbox abort_to_ue();

  SnConfig cfg_;
  SessionOptions opts_;
  Phase phase_ = Phase::awaiting_attach;
  bool resynced_ = false;
  std::uint32_t frames_ = 0;
  std::optional<wire::Suci> suci_;
  Nonce r_{};
  Tag hxres_{};
};

class BaselineHn final : public Node {
 public:
  BaselineHn(HnContext& ctx, crypto::Rng rng);

  Party role() const override { return Party::hn; }
  ProtocolId protocol() const override { return ProtocolId::baseline; }
  Outbox on_message(Party from, const wire::Message& msg) override;

  // nullopt is a decryption failure (bad MAC_ECIES or unknown SUPI).
  std::optional<wire::HnChallenge> challenge(const wire::SnToHnAttach& m);
  std::optional<wire::HnResult> verify(const wire::SnResult& m);
  // True iff the resync token verified and the SQN was updated.
  bool resync(const wire::ResyncForward& m);

 private:
  struct Pending {
    std::string supi;
    Key k{};
    wire::Suci suci;
    Nonce r{};
    Block32 xres{};
  };

  HnContext& ctx_;
  crypto::Rng rng_;
  std::optional<Pending> pending_;
};

}  // namespace akalab::aka
