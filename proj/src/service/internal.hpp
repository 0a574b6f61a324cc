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

#include <spdlog/spdlog.h>

#include "akalab/crypto/derive.hpp"
#include "akalab/crypto/rng.hpp"
#include "akalab/service/daemons.hpp"
#include "akalab/wire/codec.hpp"

namespace akalab::service::detail {

inline std::string short_id(const wire::SessionId& s) { return to_hex(ByteView(s).first(4)); }

inline crypto::Rng party_rng(const std::optional<std::uint64_t>& seed, std::string_view stream,
                             std::uint64_t index) {
  return seed ? crypto::Rng::seeded(*seed, stream, index) : crypto::Rng::system();
}

inline Bytes frame_of(wire::ProtocolId p, const wire::SessionId& sid, wire::Message msg) {
  return wire::encode({wire::kWireVersion, p, sid, std::move(msg)});
}

// Appends "<role> <session> <key>" to the file named by AKALAB_KEYLOG, if set.
void keylog(std::string_view role, const wire::SessionId& sid, const Key& k);

}  // namespace akalab::service::detail
