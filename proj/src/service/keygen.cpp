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

#include <cstdio>

#include "akalab/crypto/rng.hpp"
#include "akalab/service/config.hpp"
#include "json.hpp"

namespace akalab::service {

LabLayout write_lab(const fs::path& dir, std::size_t subscribers, const Endpoint& hn_listen,
                    const Endpoint& sn_listen, std::optional<std::uint64_t> seed) {
  if (subscribers == 0) throw ConfigError("need at least one subscriber");
  fs::create_directories(dir);
  auto rng = seed ? crypto::Rng::seeded(*seed, "provision") : crypto::Rng::system();

  const crypto::KeyPair keys = crypto::ecies_keygen(crypto::CurveId::secp256r1, rng);
  write_hex_file(dir / "hn.sk", keys.sk.bytes());
  write_hex_file(dir / "hn.pk", keys.pk.to_bytes());
  write_hex_file(dir / "link.psk", rng.bytes<32>());

  LabLayout out{dir, {}};
  for (std::size_t i = 0; i < subscribers; ++i) {
    char supi[32];
    std::snprintf(supi, sizeof supi, "imsi-00101%010zu", i + 1);
    out.subscribers.push_back({supi, rng.bytes<32>()});
  }
  write_file_atomic(dir / "subscribers.txt", format_provisioning(out.subscribers));

  const nlohmann::json hn = {{"role", "hn"},           {"listen", hn_listen.str()}, {"sk_hn", "hn.sk"},
                             {"psk", "link.psk"},      {"subscribers", "subscribers.txt"},
                             {"sqn_state", "hn.sqn"},  {"timeout_ms", 5000}};
  const nlohmann::json sn = {{"role", "sn"},      {"listen", sn_listen.str()}, {"hn", hn_listen.str()},
                             {"psk", "link.psk"}, {"id_sn", "sn.akalab"},     {"timeout_ms", 5000}};
  const nlohmann::json ue = {{"role", "ue"},        {"sn", sn_listen.str()},
                             {"pk_hn", "hn.pk"},    {"subscribers", "subscribers.txt"},
                             {"protocol", "p1"},    {"sqn_state", "ue.sqn"},
                             {"timeout_ms", 5000}};
  write_file_atomic(dir / "hn.json", hn.dump(2) + "\n");
  write_file_atomic(dir / "sn.json", sn.dump(2) + "\n");
  write_file_atomic(dir / "ue.json", ue.dump(2) + "\n");
  return out;
}

}  // namespace akalab::service
