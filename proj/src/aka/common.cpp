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

#include "akalab/aka/common.hpp"

#include "akalab/aka/baseline.hpp"
#include "akalab/aka/enhanced.hpp"

namespace akalab::aka {

std::string_view party_name(Party p) {
  switch (p) {
    case Party::ue:
      return "UE";
    case Party::sn:
      return "SN";
    case Party::hn:
      return "HN";
  }
  return "?";
}

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::pending:
      return "Pending";
    case Outcome::complete:
      return "Complete";
    case Outcome::silent_abort:
      return "SilentAbort";
    case Outcome::mac_failure:
      return "MAC_Failure";
    case Outcome::sync_failure:
      return "Sync_Failure";
  }
  return "?";
}

wire::Sqn sqn_encode(std::uint64_t sqn) {
  if (sqn > kSqnMax) throw std::out_of_range("SQN exceeds 48 bits");
  wire::Sqn out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint8_t>(sqn >> (8 * (5 - i)));
  return out;
}

std::uint64_t sqn_decode(const wire::Sqn& b) {
  std::uint64_t v = 0;
  for (auto x : b) v = (v << 8) | x;
  return v;
}

void SubscriberDb::add(const std::string& supi, const Key& k, std::uint64_t sqn) {
  if (supi.empty() || supi.size() > wire::kMaxIdentityLen) throw std::invalid_argument("SUPI length out of range");
  std::unique_lock lock(mu_);
  auto rec = std::make_unique<Record>();
  rec->k = k;
  rec->sqn = sqn;
  if (!records_.emplace(supi, std::move(rec)).second) throw std::invalid_argument("duplicate SUPI: " + supi);
}

SubscriberDb::Record& SubscriberDb::find(const std::string& supi) const {
  std::shared_lock lock(mu_);
  auto it = records_.find(supi);
  if (it == records_.end()) throw UnknownSubscriber("unknown SUPI: " + supi);
  return *it->second;
}

std::optional<Key> SubscriberDb::key(const std::string& supi) const {
  std::shared_lock lock(mu_);
  auto it = records_.find(supi);
  if (it == records_.end()) return std::nullopt;
  return it->second->k;
}

std::uint64_t SubscriberDb::sqn(const std::string& supi) const {
  Record& r = find(supi);
  std::lock_guard g(r.mu);
  return r.sqn;
}

std::uint64_t SubscriberDb::take_sqn(const std::string& supi) {
  Record& r = find(supi);
  std::lock_guard g(r.mu);
  if (r.sqn >= kSqnMax) throw std::overflow_error("SQN exhausted");
  return r.sqn++;
}

void SubscriberDb::resync(const std::string& supi, std::uint64_t sqn_ue) {
  Record& r = find(supi);
  std::lock_guard g(r.mu);
  r.sqn = std::max(r.sqn, std::min(sqn_ue + 1, kSqnMax));
}

void SubscriberDb::set_sqn(const std::string& supi, std::uint64_t sqn) {
  Record& r = find(supi);
  std::lock_guard g(r.mu);
  r.sqn = sqn;
}

std::vector<std::string> SubscriberDb::supis() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (const auto& [s, _] : records_) out.push_back(s);
  return out;
}

std::size_t SubscriberDb::size() const {
  std::shared_lock lock(mu_);
  return records_.size();
}

Bytes SubscriberDb::snapshot() const {
  std::shared_lock lock(mu_);
  Bytes out;
  for (const auto& [supi, rec] : records_) {
    std::lock_guard g(rec->mu);
    out.insert(out.end(), supi.begin(), supi.end());
    out.push_back(0);
    out.insert(out.end(), rec->k.begin(), rec->k.end());
    auto s = sqn_encode(rec->sqn);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

Bytes HnContext::snapshot() const {
  return concat({keys.sk.bytes(), keys.pk.encoding(), as_bytes(id_hn), db.snapshot()});
}

Bytes UeProfile::snapshot() const {
  auto s = sqn_encode(sqn);
  return concat({as_bytes(supi), k, pk_hn.encoding(), as_bytes(id_hn), as_bytes(serving_network), s});
}

std::unique_ptr<Node> make_ue(ProtocolId p, UeProfile& profile, crypto::Rng rng, SessionOptions opts) {
  if (p == ProtocolId::baseline) return std::make_unique<BaselineUe>(profile, std::move(rng), opts);
  return std::make_unique<EnhancedUe>(p, profile, std::move(rng));
}

std::unique_ptr<Node> make_sn(ProtocolId p, SnConfig cfg, SessionOptions opts) {
  if (p == ProtocolId::baseline) return std::make_unique<BaselineSn>(std::move(cfg), opts);
  return std::make_unique<EnhancedSn>(p, std::move(cfg));
}

std::unique_ptr<Node> make_hn(ProtocolId p, HnContext& ctx, crypto::Rng rng) {
  if (p == ProtocolId::baseline) return std::make_unique<BaselineHn>(ctx, std::move(rng));
  return std::make_unique<EnhancedHn>(p, ctx, std::move(rng));
}

}  // namespace akalab::aka
