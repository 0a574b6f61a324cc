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

#include <sstream>
#include <thread>

#include "internal.hpp"

namespace akalab::service {

using detail::frame_of;

int UeReport::exit_code() const {
  switch (abort) {
    case AbortKind::none:
      return outcome == aka::Outcome::complete ? 0 : 2;
    case AbortKind::local:
      return 2;
    case AbortKind::remote:
      return 3;
    case AbortKind::transient:
      return 4;
    case AbortKind::timeout:
      return 5;
  }
  return 1;
}

std::string UeReport::render() const {
  std::ostringstream os;
  os << "protocol=" << wire::protocol_name(protocol) << "\n"
     << "supi=" << supi << "\n"
     << "outcome=" << aka::outcome_name(outcome) << "\n"
     << "abort=" << abort_name(abort) << "\n";
  if (!reason.empty()) os << "reason=" << reason << "\n";
  os << "messages=" << (messages ? std::to_string(*messages) : "unknown") << "\n"
     << "ue_socket_frames=" << socket_frames << "\n"
     << "ops=" << ops.to_string() << "\n"
     << "kseaf_fingerprint=" << fingerprint.value_or("none") << "\n"
     << "attempts=" << attempts << "\n"
     << "exit_code=" << exit_code() << "\n";
  return os.str();
}

namespace {

void save_ue_sqn(const fs::path& path, const std::string& supi, std::uint64_t sqn) {
  auto state = load_sqn_state(path);
  bool found = false;
  for (auto& [s, v] : state) {
    if (s == supi) {
      v = sqn;
      found = true;
    }
  }
  if (!found) state.emplace_back(supi, sqn);
  save_sqn_state(path, state);
}

UeReport attempt(const EndpointConfig& cfg, aka::UeProfile& profile, const UeRunOptions& opts,
                 std::uint64_t index) {
  UeReport r;
  r.protocol = cfg.protocol;
  r.supi = profile.supi;
  const Deadline deadline = deadline_in(cfg.timeout);

  Socket sn;
  try {
    sn = connect_to(*cfg.sn, deadline);
  } catch (const NetError& e) {
    r.abort = AbortKind::transient;
    r.reason = std::string("serving network unreachable: ") + e.what();
    return r;
  }

  auto node = aka::make_ue(cfg.protocol, profile, detail::party_rng(opts.seed, "ue", index));
  wire::SessionId sid{};
  std::optional<wire::NoticeCode> remote;
  bool timed_out = false;
  auto send_all = [&](aka::Outbox out) {
    for (auto& o : out) {
      send_frame(sn, frame_of(cfg.protocol, sid, std::move(o.msg)), deadline);
      ++r.socket_frames;
    }
  };

  try {
    send_all(node->start());
    for (;;) {
      // A completed UE still waits for the SN's notice carrying the frame count.
      if (node->finished() && (node->outcome() != aka::Outcome::complete || r.messages)) break;
      auto b = recv_frame(sn, deadline);
      if (!b) break;
      ++r.socket_frames;
      const wire::Frame f = wire::decode(*b);
      if (f.protocol != cfg.protocol) throw wire::DecodeError(6, "protocol id changed mid-session");
      sid = f.session;
      if (const auto* n = std::get_if<wire::Notice>(&f.msg)) {
        if (n->code == wire::NoticeCode::complete) {
          r.messages = n->value;
        } else if (!node->finished()) {
          remote = n->code;
        }
      }
      send_all(node->on_message(aka::Party::sn, f.msg));
    }
  } catch (const Timeout&) {
    timed_out = true;
  } catch (const NetError& e) {
    r.reason = e.what();
  } catch (const wire::DecodeError& e) {
    r.reason = std::string("malformed frame from serving network: ") + e.what();
  }
  const bool finished_locally = node->finished();
  node->expire();

  r.outcome = node->outcome();
  r.ops = node->ops();
  if (const auto& k = node->anchor_key(); k && r.outcome == aka::Outcome::complete) {
    r.fingerprint = crypto::key_fingerprint(*k);
  }
  if (r.outcome == aka::Outcome::complete) {
    r.abort = AbortKind::none;
  } else if (remote == wire::NoticeCode::transient_failure) {
    r.abort = AbortKind::transient;
    r.reason = "home network unavailable";
  } else if (remote) {
    r.abort = AbortKind::remote;
    r.reason = std::string("network aborted: ") + std::string(wire::notice_name(*remote));
  } else if (finished_locally) {
    r.abort = AbortKind::local;
    r.reason = std::string("rejected by the UE: ") + std::string(aka::outcome_name(r.outcome));
  } else if (timed_out) {
    r.abort = AbortKind::timeout;
    r.reason = "no answer within " + std::to_string(cfg.timeout.count()) + " ms";
  } else {
    r.abort = AbortKind::remote;
    if (r.reason.empty()) r.reason = "serving network closed the connection";
  }
  return r;
}

}  // namespace

UeReport run_ue_client(const EndpointConfig& cfg, const UeRunOptions& opts) {
  cfg.validate();
  if (cfg.role != Role::ue) throw ConfigError("config: role must be ue");
  const auto subs = load_provisioning(cfg.subscribers);
  const auto it = std::find_if(subs.begin(), subs.end(), [&](const Subscriber& s) { return s.supi == opts.supi; });
  if (it == subs.end()) throw ConfigError("subscriber '" + opts.supi + "' is not provisioned on this UE");

  aka::UeProfile profile{it->supi, it->k, load_hn_public(cfg.pk_hn), cfg.id_hn, cfg.id_sn, 0};
  if (!cfg.sqn_state.empty()) {
    for (const auto& [s, v] : load_sqn_state(cfg.sqn_state)) {
      if (s == profile.supi) profile.sqn = v;
    }
  }

  UeReport r;
  for (int i = 0; i <= opts.retries; ++i) {
    if (i > 0) std::this_thread::sleep_for(opts.retry_delay);
    r = attempt(cfg, profile, opts, static_cast<std::uint64_t>(i));
    r.attempts = static_cast<std::size_t>(i + 1);
    if (r.abort != AbortKind::transient) break;
  }
  if (!cfg.sqn_state.empty() && cfg.protocol == wire::ProtocolId::baseline) {
    save_ue_sqn(cfg.sqn_state, profile.supi, profile.sqn);
  }
  return r;
}

}  // namespace akalab::service
