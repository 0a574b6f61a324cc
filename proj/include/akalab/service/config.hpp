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

#include <chrono>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "akalab/aka/common.hpp"
#include "akalab/service/net.hpp"
#include "akalab/service/tunnel.hpp"

namespace akalab::service {

namespace fs = std::filesystem;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- provisioning

inline constexpr std::string_view kProvisioningHeader = "#akalab-subscribers v1";

struct Subscriber {
  std::string supi;
  Key k{};
};

// Header line, then one `SUPI,k_hex` per line. Blank lines and later
// '#' lines are skipped. Throws ConfigError naming the line on a bad header,
// malformed entry or duplicate SUPI.
std::vector<Subscriber> parse_provisioning(std::string_view text);
std::vector<Subscriber> load_provisioning(const fs::path& path);
std::string format_provisioning(const std::vector<Subscriber>& subs);

// ---------------------------------------------------------------- key files

// Single-line lowercase hex files.
Bytes read_hex_file(const fs::path& path, std::size_t expected_len);
void write_hex_file(const fs::path& path, ByteView data);
// Writes via a temporary file and rename.
void write_file_atomic(const fs::path& path, std::string_view contents);

crypto::KeyPair load_hn_keys(const fs::path& sk_path);
crypto::GroupElement load_hn_public(const fs::path& pk_path);
Psk load_psk(const fs::path& path);

// `SUPI,sqn` lines.
std::vector<std::pair<std::string, std::uint64_t>> load_sqn_state(const fs::path& path);
void save_sqn_state(const fs::path& path, const std::vector<std::pair<std::string, std::uint64_t>>& state);

// ---------------------------------------------------------------- endpoint config

enum class Role : std::uint8_t { hn, sn, ue };

struct EndpointConfig {
  Role role = Role::ue;
  std::optional<Endpoint> listen;
  std::optional<Endpoint> hn;  // SN: home network peer
  std::optional<Endpoint> sn;  // UE: serving network to attach to
  wire::ProtocolId protocol = wire::ProtocolId::p1;
  fs::path sk_hn, pk_hn, psk, subscribers, sqn_state;
  std::string id_sn = "sn.akalab";
  std::string id_hn = "hn.akalab";
  std::chrono::milliseconds timeout{5000};

  // Throws ConfigError when a role's required field is missing.
  void validate() const;
};

// JSON object; relative paths resolve against `base_dir`.
EndpointConfig parse_config(std::string_view json_text, const fs::path& base_dir);
EndpointConfig load_config(const fs::path& path);

// ---------------------------------------------------------------- lab layout

struct LabLayout {
  fs::path dir;
  std::vector<Subscriber> subscribers;
};

// Writes hn.sk, hn.pk, link.psk, subscribers.txt and ready-to-use
// hn.json, sn.json and ue.json into `dir`. SUPIs are imsi-00101NNNNNNNNNN.
LabLayout write_lab(const fs::path& dir, std::size_t subscribers, const Endpoint& hn_listen,
                    const Endpoint& sn_listen, std::optional<std::uint64_t> seed = {});

}  // namespace akalab::service
