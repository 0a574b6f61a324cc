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
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "akalab/crypto/ecies.hpp"
#include "akalab/wire/messages.hpp"

namespace akalab::aka {

using crypto::OpCounters;
using wire::ProtocolId;

enum class Party : std::uint8_t { ue, sn, hn };
std::string_view party_name(Party p);

enum class Outcome : std::uint8_t { pending, complete, silent_abort, mac_failure, sync_failure };
std::string_view outcome_name(Outcome o);

inline constexpr std::uint64_t kSqnMax = (std::uint64_t{1} << 48) - 1;

wire::Sqn sqn_encode(std::uint64_t sqn);
std::uint64_t sqn_decode(const wire::Sqn& b);

class UnknownSubscriber : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// HN subscriber table. Lookups take a shared lock; SQN updates are
// serialized per subscriber.
class SubscriberDb {
 public:
  static constexpr std::uint64_t kInitialSqn = 1;

  SubscriberDb() = default;
  SubscriberDb(const SubscriberDb&) = delete;
  SubscriberDb& operator=(const SubscriberDb&) = delete;

  // Throws std::invalid_argument on a duplicate SUPI.
  void add(const std::string& supi, const Key& k, std::uint64_t sqn = kInitialSqn);

  std::optional<Key> key(const std::string& supi) const;
  std::uint64_t sqn(const std::string& supi) const;

  // Current SQN, then advance by one. Throws UnknownSubscriber.
  std::uint64_t take_sqn(const std::string& supi);

  // sqn := max(sqn, sqn_ue + 1).
  void resync(const std::string& supi, std::uint64_t sqn_ue);

  // Administrative overwrite, e.g. restoring a backup.
  void set_sqn(const std::string& supi, std::uint64_t sqn);

  std::vector<std::string> supis() const;
  std::size_t size() const;

  // Canonical serialization of every record.
  Bytes snapshot() const;

 private:
  struct Record {
    Key k{};
    mutable std::mutex mu;
    std::uint64_t sqn = kInitialSqn;
  };
  Record& find(const std::string& supi) const;

  mutable std::shared_mutex mu_;
  std::map<std::string, std::unique_ptr<Record>> records_;
};

struct HnContext {
  crypto::KeyPair keys;
  SubscriberDb db;
  std::string id_hn = "hn.akalab";

  Bytes snapshot() const;
};

// USIM contents plus the UE's view of its home network.
struct UeProfile {
  std::string supi;
  Key k{};
  crypto::GroupElement pk_hn;
  std::string id_hn = "hn.akalab";
  // Name of the serving network the UE is camped on; baseline derivations
  // need it before any SN identity arrives in-band.
  std::string serving_network = "sn.akalab";
  std::uint64_t sqn = 0;

  Bytes snapshot() const;
};

struct SessionOptions {
  bool key_confirmation = true;
  bool restart_after_sync_failure = true;
};

struct SnConfig {
  std::string id_sn = "sn.akalab";
  std::string id_hn = "hn.akalab";
};

struct Outbound {
  Party to;
  wire::Message msg;
};
using Outbox = std::vector<Outbound>;

// One party's side of one session, driven by messages.
class Node {
 public:
  virtual ~Node() = default;

  virtual Party role() const = 0;
  virtual ProtocolId protocol() const = 0;

  // Initiator hook; only the UE emits anything.
  virtual Outbox start() { return {}; }
  virtual Outbox on_message(Party from, const wire::Message& msg) = 0;

  // Turn a still-pending session into a silent abort and drop session secrets.
  void expire() {
    if (outcome_ == Outcome::pending) outcome_ = Outcome::silent_abort;
    release();
  }

  Outcome outcome() const { return outcome_; }
  // No further message will change this party's state.
  virtual bool finished() const { return outcome_ != Outcome::pending; }
  const std::optional<Key>& anchor_key() const { return kseaf_; }
  const OpCounters& ops() const { return ops_; }
  // SUPI as learned by this party (SN after the result, HN after decryption).
  const std::optional<std::string>& supi_view() const { return supi_; }
  // ID_SN bound into this party's key.
  const std::optional<std::string>& id_sn_view() const { return id_sn_; }
  std::size_t ignored() const { return ignored_; }

 protected:
  virtual void release() {}

  Outbox ignore() {
    ++ignored_;
    return {};
  }

  Outcome outcome_ = Outcome::pending;
  std::optional<Key> kseaf_;
  std::optional<std::string> supi_;
  std::optional<std::string> id_sn_;
  OpCounters ops_;
  std::size_t ignored_ = 0;
};

std::unique_ptr<Node> make_ue(ProtocolId p, UeProfile& profile, crypto::Rng rng, SessionOptions opts = {});
std::unique_ptr<Node> make_sn(ProtocolId p, SnConfig cfg, SessionOptions opts = {});
std::unique_ptr<Node> make_hn(ProtocolId p, HnContext& ctx, crypto::Rng rng);

}  // namespace akalab::aka
