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

// Stateless SUCI-bound challenge-response (protocol 1) and its DH variant
// with forward secrecy (protocol 2). Both share one message flow; protocol 2
// replaces the HN nonce with a DH share and keys the anchor off the DH secret.

class EnhancedUe final : public Node {
 public:
  EnhancedUe(ProtocolId p, UeProfile& profile, crypto::Rng rng);
  ~EnhancedUe() override;

  Party role() const override { return Party::ue; }
  ProtocolId protocol() const override { return protocol_; }
  Outbox start() override;
  Outbox on_message(Party from, const wire::Message& msg) override;

  wire::M1 initiate();
  // nullopt is the silent abort: no message, no distinguishing output.
  std::optional<wire::M5> finalize(const wire::M4& m);

  // True once no ephemeral exponent or session secret remains in memory.
  bool ephemeral_wiped() const;
  std::optional<std::uint32_t> reported_frames() const { return reported_; }

 private:
  void release() override;

  ProtocolId protocol_;
  UeProfile& profile_;
  crypto::Rng rng_;
  bool awaiting_ = false;
  Nonce r_{};
  crypto::SharedSecret k_ue_;
  std::optional<crypto::Scalar> ephemeral_;
  std::optional<std::uint32_t> reported_;
};

class EnhancedSn final : public Node {
 public:
  EnhancedSn(ProtocolId p, SnConfig cfg);

  Party role() const override { return Party::sn; }
  ProtocolId protocol() const override { return protocol_; }
  Outbox on_message(Party from, const wire::Message& msg) override;

  // Checks the hashed starred response, then kcMAC under the stored key.
  std::optional<wire::M6> check(const wire::M5& m);

  std::uint32_t frames_seen() const { return frames_; }

 private:
  enum class Phase { awaiting_m1, awaiting_m3, awaiting_m5, awaiting_m7, done };
  Outbox abort_to_ue();

  ProtocolId protocol_;
  SnConfig cfg_;
  Phase phase_ = Phase::awaiting_m1;
  std::uint32_t frames_ = 0;
  std::optional<wire::Suci> suci_;
  Tag hxres_star_{};
  Nonce xr_{};
  wire::ChallengeShare share_;
};

class EnhancedHn final : public Node {
 public:
  EnhancedHn(ProtocolId p, HnContext& ctx, crypto::Rng rng);
  ~EnhancedHn() override;

  Party role() const override { return Party::hn; }
  ProtocolId protocol() const override { return protocol_; }
  Outbox on_message(Party from, const wire::Message& msg) override;

  enum class Reject { none, decrypt_failure, mac_failure };
  // On rejection `reject` says why and nullopt is returned.
  std::optional<wire::M3> respond(const wire::M2& m, Reject& reject);
  std::optional<wire::M7> confirm(const wire::M6& m);

  // Protocol 2 lifecycle hook: the DH exponent and the DH secret are zero.
  bool ephemeral_wiped() const;

 private:
  void release() override;

  ProtocolId protocol_;
  HnContext& ctx_;
  crypto::Rng rng_;
  bool awaiting_ = false;
  std::string supi_full_;
  wire::Suci suci_;
  wire::ChallengeShare share_;
  Tag xres_star_{};
  std::optional<crypto::Scalar> rhn_;
  Bytes dh_key_;
};

}  // namespace akalab::aka
