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

#include <poll.h>

#include <fstream>

#include "internal.hpp"

namespace akalab::service {

using detail::frame_of;
using detail::short_id;

SnDaemon::SnDaemon(const EndpointConfig& cfg, Psk psk, std::optional<std::uint64_t> seed,
                   std::optional<fs::path> capture)
    : Server(*cfg.listen, cfg.timeout), cfg_(cfg), psk_(psk), seed_(seed), capture_(std::move(capture)) {
  if (!cfg_.hn) throw ConfigError("config: sn needs an hn peer");
  spdlog::info("sn: {} listening on {}, home network at {}", cfg_.id_sn, endpoint().str(), cfg_.hn->str());
}

void SnDaemon::record(ByteView frame) {
  if (!capture_) return;
  std::lock_guard lock(capture_mu_);
  std::ofstream out(*capture_, std::ios::binary | std::ios::app);
  out.write(reinterpret_cast<const char*>(frame.data()), static_cast<std::streamsize>(frame.size()));
}

void SnDaemon::handle(Socket ue, std::uint64_t index) {
  const Deadline deadline = deadline_in(timeout_);
  const wire::SessionId sid = detail::party_rng(seed_, "session", index).bytes<wire::kSessionIdLen>();

  std::optional<Bytes> first;
  try {
    first = recv_frame(ue, deadline);
  } catch (const NetError& e) {
    spdlog::warn("sn: session {} no initiation: {}", short_id(sid), e.what());
    return;
  } catch (const wire::DecodeError& e) {
    spdlog::warn("sn: session {} bad length prefix: {}", short_id(sid), e.what());
    return;
  }
  if (!first) return;
  record(*first);

  auto reply_notice = [&](wire::ProtocolId p, wire::NoticeCode code) {
    const Bytes b = frame_of(p, sid, wire::Notice{code, 0});
    record(b);
    try {
      send_frame(ue, b, deadline);
    } catch (const NetError&) {
    }
  };

  wire::Frame f0;
  try {
    f0 = wire::decode(*first);
  } catch (const wire::DecodeError& e) {
    spdlog::warn("sn: session {} malformed initiation: {}", short_id(sid), e.what());
    reply_notice(wire::ProtocolId::p1, wire::NoticeCode::protocol_error);
    return;
  }
  const wire::ProtocolId proto = f0.protocol;

  std::optional<Tunnel> hn;
  try {
    hn.emplace(Tunnel::client(connect_to(*cfg_.hn, deadline), psk_, deadline));
  } catch (const NetError& e) {
    spdlog::warn("sn: session {} home network unavailable: {}", short_id(sid), e.what());
    reply_notice(proto, wire::NoticeCode::transient_failure);
    return;
  }

  auto node = aka::make_sn(proto, aka::SnConfig{cfg_.id_sn, cfg_.id_hn});
  auto dispatch = [&](aka::Party from, const wire::Message& msg) {
    for (auto& o : node->on_message(from, msg)) {
      if (o.to == aka::Party::ue) {
        if (wire::carries_anchor_key(o.msg)) {
          throw std::logic_error(std::string(wire::message_name(o.msg)) + " refused on the UE socket");
        }
        const Bytes b = frame_of(proto, sid, std::move(o.msg));
        record(b);
        send_frame(ue, b, deadline);
      } else {
        hn->send(frame_of(proto, sid, std::move(o.msg)), deadline);
      }
    }
  };

  try {
    dispatch(aka::Party::ue, f0.msg);
    while (!node->finished()) {
      pollfd fds[2] = {{ue.fd(), POLLIN, 0}, {hn->socket().fd(), POLLIN, 0}};
      const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
      if (left <= 0) throw Timeout("session deadline");
      if (::poll(fds, 2, static_cast<int>(left)) < 0) {
        if (errno == EINTR) continue;
        throw NetError("poll failed");
      }
      if (fds[1].revents) {
        auto rec = hn->recv(deadline);
        if (!rec) {
          spdlog::warn("sn: session {} home network closed the link", short_id(sid));
          reply_notice(proto, wire::NoticeCode::transient_failure);
          break;
        }
        dispatch(aka::Party::hn, wire::decode(*rec).msg);
      }
      if (fds[0].revents && !node->finished()) {
        auto b = recv_frame(ue, deadline);
        if (!b) break;
        record(*b);
        wire::Frame f;
        try {
          f = wire::decode(*b);
        } catch (const wire::DecodeError& e) {
          spdlog::warn("sn: session {} malformed UE frame: {}", short_id(sid), e.what());
          reply_notice(proto, wire::NoticeCode::protocol_error);
          break;
        }
        if (f.protocol != proto) {
          reply_notice(proto, wire::NoticeCode::protocol_error);
          break;
        }
        dispatch(aka::Party::ue, f.msg);
      }
    }
  } catch (const Timeout&) {
    spdlog::info("sn: session {} timed out", short_id(sid));
  } catch (const NetError& e) {
    spdlog::warn("sn: session {} link error: {}", short_id(sid), e.what());
  } catch (const wire::DecodeError& e) {
    spdlog::warn("sn: session {} malformed home network frame: {}", short_id(sid), e.what());
    reply_notice(proto, wire::NoticeCode::protocol_error);
  }
  node->expire();

  const auto& k = node->anchor_key();
  if (node->outcome() == aka::Outcome::complete && k) {
    spdlog::info("sn: session {} protocol={} supi={} outcome=complete kseaf#{}", short_id(sid),
                 wire::protocol_name(proto), node->supi_view().value_or("?"), crypto::key_fingerprint(*k));
    detail::keylog("sn", sid, *k);
  } else {
    spdlog::info("sn: session {} protocol={} outcome={}", short_id(sid), wire::protocol_name(proto),
                 aka::outcome_name(node->outcome()));
  }
  ue.shutdown_write();
}

}  // namespace akalab::service
