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

#include <stdexcept>
#include <string>
#include <vector>

#include "akalab/aka/common.hpp"
#include "akalab/netlab/adversary.hpp"

namespace akalab::netlab {

using aka::Outcome;
using aka::Party;
using wire::ProtocolId;

// UE-SN traffic is open to the attacker; SN-HN is authenticated and private.
enum class Link : std::uint8_t { open, secure };
std::string_view link_name(Link l);

enum class EventKind : std::uint8_t {
  delivered,    // honest frame reached its recipient
  dropped,      // removed by the attacker
  injected,     // attacker-originated frame delivered
  modified,     // honest frame altered in flight, then delivered
  undecodable,  // recipient could not parse the frame
};
std::string_view event_kind_name(EventKind k);

struct Event {
  std::size_t step = 0;
  Link link = Link::open;
  Party from = Party::ue;
  Party to = Party::sn;
  EventKind kind = EventKind::delivered;
  Bytes frame;
  bool operator==(const Event&) const = default;
};

// Final per-party state. The key is a test oracle and never part of the
// attacker's view.
struct PartyView {
  Outcome outcome = Outcome::pending;
  std::optional<Key> kseaf;
  crypto::OpCounters ops;
  std::optional<std::string> supi;
  std::optional<std::string> id_sn;
  bool operator==(const PartyView&) const = default;
};

struct Transcript {
  ProtocolId protocol = ProtocolId::baseline;
  wire::SessionId session{};
  std::string id_sn;  // public serving network name
  std::vector<Event> events;
  PartyView ue, sn, hn;

  bool operator==(const Transcript&) const = default;

  const PartyView& view(Party p) const;

  // Protocol frames that reached a party (notices excluded).
  std::size_t protocol_frames() const;
  // Everything the attacker saw on the open link, decoded.
  std::vector<wire::Message> open_messages() const;
  // Frames an honest party put on the open link, decoded.
  std::vector<wire::Message> sent_by(Party p) const;
  // Channel-typing check: an anchor key never crossed the open link.
  bool anchor_key_exposed() const;
  // Human-readable event log.
  std::string render() const;
  // Concatenated canonical frames, in event order.
  Bytes export_frames() const;
};

class ScheduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChannelViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  ProtocolId protocol = ProtocolId::p1;
  std::uint64_t seed = 1;
  // Selects RNG streams and session_id, so distinct runs never share randomness.
  std::uint64_t index = 0;
  aka::SessionOptions options;
  std::size_t step_budget = 256;
  Adversary* adversary = nullptr;
};

// Drives one UE, SN and HN session under a FIFO scheduler until quiescence.
// Parties still pending at quiescence record SilentAbort.
Transcript run_session(const RunConfig& cfg, aka::UeProfile& ue, aka::HnContext& hn, const aka::SnConfig& sn);

// A home network with provisioned subscribers and a serving network, all
// derived from one seed.
class Lab {
 public:
  explicit Lab(std::uint64_t seed, std::size_t subscribers = 2);

  Transcript run(ProtocolId p, std::size_t ue, Adversary* adv = nullptr, aka::SessionOptions opts = {});

  aka::HnContext& hn() { return hn_; }
  const aka::SnConfig& sn() const { return sn_; }
  aka::UeProfile& ue(std::size_t i) { return ues_.at(i); }
  std::size_t subscribers() const { return ues_.size(); }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t sessions_run() const { return next_index_; }

 private:
  std::uint64_t seed_;
  aka::HnContext hn_;
  aka::SnConfig sn_;
  std::vector<aka::UeProfile> ues_;
  std::uint64_t next_index_ = 0;
};

}  // namespace akalab::netlab
