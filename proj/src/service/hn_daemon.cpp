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

#include "internal.hpp"

namespace akalab::service {

using detail::frame_of;
using detail::short_id;

HnMaterials load_hn_materials(const EndpointConfig& cfg) {
  cfg.validate();
  if (cfg.role != Role::hn) throw ConfigError("config: role must be hn");
  return {load_hn_keys(cfg.sk_hn), load_provisioning(cfg.subscribers), load_psk(cfg.psk)};
}

HnDaemon::HnDaemon(const EndpointConfig& cfg, HnMaterials m, std::optional<std::uint64_t> seed)
    : Server(*cfg.listen, cfg.timeout), cfg_(cfg), psk_(m.psk), ctx_{std::move(m.keys), {}, cfg.id_hn}, seed_(seed) {
  for (const auto& s : m.subscribers) ctx_.db.add(s.supi, s.k);
  if (!cfg_.sqn_state.empty()) {
    for (const auto& [supi, sqn] : load_sqn_state(cfg_.sqn_state)) {
      if (ctx_.db.key(supi)) {
        ctx_.db.set_sqn(supi, sqn);
      } else {
        spdlog::warn("sqn state names unknown subscriber {}", supi);
      }
    }
  }
  spdlog::info("hn: {} subscribers, listening on {}", ctx_.db.size(), endpoint().str());
}

void HnDaemon::persist() {
  if (cfg_.sqn_state.empty()) return;
  std::lock_guard lock(persist_mu_);
  std::vector<std::pair<std::string, std::uint64_t>> state;
  for (const auto& supi : ctx_.db.supis()) state.emplace_back(supi, ctx_.db.sqn(supi));
  save_sqn_state(cfg_.sqn_state, state);
}

void HnDaemon::handle(Socket s, std::uint64_t index) {
  const Deadline deadline = deadline_in(timeout_);
  std::optional<Tunnel> tunnel;
  try {
    tunnel.emplace(Tunnel::server(std::move(s), psk_, deadline));
  } catch (const NetError& e) {
    spdlog::warn("hn: tunnel handshake failed: {}", e.what());
    return;
  }

  std::unique_ptr<aka::Node> node;
  wire::ProtocolId proto = wire::ProtocolId::p1;
  wire::SessionId sid{};
  try {
    while (auto rec = tunnel->recv(deadline)) {
      wire::Frame f;
      try {
        f = wire::decode(*rec);
      } catch (const wire::DecodeError& e) {
        spdlog::warn("hn: session {} malformed frame: {}", short_id(sid), e.what());
        tunnel->send(frame_of(proto, sid, wire::Notice{wire::NoticeCode::protocol_error, 0}), deadline);
        break;
      }
      if (!node) {
        proto = f.protocol;
        sid = f.session;
        node = aka::make_hn(proto, ctx_, detail::party_rng(seed_, "hn", index));
      } else if (f.protocol != proto || f.session != sid) {
        spdlog::warn("hn: session {} frame for another session", short_id(sid));
        tunnel->send(frame_of(proto, sid, wire::Notice{wire::NoticeCode::protocol_error, 0}), deadline);
        break;
      }
      for (auto& o : node->on_message(aka::Party::sn, f.msg)) {
        tunnel->send(frame_of(proto, sid, std::move(o.msg)), deadline);
      }
    }
  } catch (const Timeout&) {
    spdlog::info("hn: session {} timed out", short_id(sid));
  } catch (const NetError& e) {
    spdlog::warn("hn: session {} link error: {}", short_id(sid), e.what());
  }
  if (!node) return;
  node->expire();

  const auto& k = node->anchor_key();
  if (node->outcome() == aka::Outcome::complete && k) {
    spdlog::info("hn: session {} protocol={} supi={} outcome=complete kseaf#{}", short_id(sid),
                 wire::protocol_name(proto), node->supi_view().value_or("?"), crypto::key_fingerprint(*k));
    detail::keylog("hn", sid, *k);
  } else {
    spdlog::info("hn: session {} protocol={} outcome={}", short_id(sid), wire::protocol_name(proto),
                 aka::outcome_name(node->outcome()));
  }
  spdlog::debug("hn: session {} ops {}", short_id(sid), node->ops().to_string());
  if (proto == wire::ProtocolId::baseline) persist();
}

}  // namespace akalab::service
