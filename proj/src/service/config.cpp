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

#include "akalab/service/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace akalab::service {

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool is_hex(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

std::vector<Subscriber> parse_provisioning(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t n = 0;
  if (!std::getline(in, line) || trim(line) != kProvisioningHeader) {
    throw ConfigError("provisioning line 1: expected header '" + std::string(kProvisioningHeader) + "'");
  }
  ++n;
  std::vector<Subscriber> out;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++n;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto where = "provisioning line " + std::to_string(n) + ": ";
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError(where + "expected SUPI,k_hex");
    Subscriber s;
    s.supi = trim(line.substr(0, comma));
    const std::string hex = trim(line.substr(comma + 1));
    if (s.supi.empty() || s.supi.size() > wire::kMaxIdentityLen) throw ConfigError(where + "bad SUPI length");
    if (hex.size() != 64 || !is_hex(hex)) throw ConfigError(where + "k must be 64 hex characters");
    const Bytes k = from_hex(hex);
    std::copy(k.begin(), k.end(), s.k.begin());
    if (!seen.insert(s.supi).second) throw ConfigError(where + "duplicate SUPI '" + s.supi + "'");
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Subscriber> load_provisioning(const fs::path& path) { return parse_provisioning(read_text(path)); }

std::string format_provisioning(const std::vector<Subscriber>& subs) {
  std::string out = std::string(kProvisioningHeader) + "\n";
  for (const auto& s : subs) out += s.supi + "," + to_hex(s.k) + "\n";
  return out;
}

Bytes read_hex_file(const fs::path& path, std::size_t expected_len) {
  const std::string hex = trim(read_text(path));
  if (hex.size() != 2 * expected_len || !is_hex(hex)) {
    throw ConfigError(path.string() + ": expected " + std::to_string(expected_len) + " bytes of hex");
  }
  return from_hex(hex);
}

void write_file_atomic(const fs::path& path, std::string_view contents) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << contents;
    if (!out.flush()) throw ConfigError("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

void write_hex_file(const fs::path& path, ByteView data) { write_file_atomic(path, to_hex(data) + "\n"); }

crypto::KeyPair load_hn_keys(const fs::path& sk_path) {
  const Bytes sk = read_hex_file(sk_path, 32);
  try {
    auto scalar = crypto::Scalar::decode(crypto::CurveId::secp256r1, sk);
    crypto::OpCounters scratch;
    auto pk = crypto::mul_generator(scalar, scratch);
    return {std::move(scalar), std::move(pk)};
  } catch (const crypto::CryptoError& e) {
    throw ConfigError(sk_path.string() + ": " + e.what());
  }
}

crypto::GroupElement load_hn_public(const fs::path& pk_path) {
  const Bytes pk = read_hex_file(pk_path, wire::kPointLen);
  try {
    return crypto::GroupElement::decode(crypto::CurveId::secp256r1, pk);
  } catch (const crypto::CryptoError& e) {
    throw ConfigError(pk_path.string() + ": " + e.what());
  }
}

Psk load_psk(const fs::path& path) {
  const Bytes b = read_hex_file(path, 32);
  Psk psk{};
  std::copy(b.begin(), b.end(), psk.begin());
  return psk;
}

std::vector<std::pair<std::string, std::uint64_t>> load_sqn_state(const fs::path& path) {
  std::vector<std::pair<std::string, std::uint64_t>> out;
  if (!fs::exists(path)) return out;
  std::istringstream in(read_text(path));
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("comma");
      std::size_t used = 0;
      const std::string num = trim(line.substr(comma + 1));
      const std::uint64_t v = std::stoull(num, &used);
      if (used != num.size() || v > aka::kSqnMax) throw std::invalid_argument("range");
      out.emplace_back(trim(line.substr(0, comma)), v);
    } catch (const std::exception&) {
      throw ConfigError(path.string() + " line " + std::to_string(n) + ": expected SUPI,sqn");
    }
  }
  return out;
}

void save_sqn_state(const fs::path& path, const std::vector<std::pair<std::string, std::uint64_t>>& state) {
  std::string out = "#akalab-sqn v1\n";
  for (const auto& [supi, sqn] : state) out += supi + "," + std::to_string(sqn) + "\n";
  write_file_atomic(path, out);
}

void EndpointConfig::validate() const {
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("config: ") + what + " is required for this role");
  };
  switch (role) {
    case Role::hn:
      need(listen.has_value(), "listen");
      need(!sk_hn.empty(), "sk_hn");
      need(!psk.empty(), "psk");
      need(!subscribers.empty(), "subscribers");
      break;
    case Role::sn:
      need(listen.has_value(), "listen");
      need(hn.has_value(), "hn");
      need(!psk.empty(), "psk");
      break;
    case Role::ue:
      need(sn.has_value(), "sn");
      need(!pk_hn.empty(), "pk_hn");
      need(!subscribers.empty(), "subscribers");
      break;
  }
  if (timeout.count() <= 0) throw ConfigError("config: timeout_ms must be positive");
}

EndpointConfig parse_config(std::string_view json_text, const fs::path& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");

  EndpointConfig c;
  try {
    const std::string role = j.at("role").get<std::string>();
    if (role == "hn") {
      c.role = Role::hn;
    } else if (role == "sn") {
      c.role = Role::sn;
    } else if (role == "ue") {
      c.role = Role::ue;
    } else {
      throw ConfigError("config: role must be hn, sn or ue");
    }
    auto endpoint = [&](const char* key, std::optional<Endpoint>& out) {
      if (j.contains(key)) out = parse_endpoint(j[key].get<std::string>());
    };
    auto path = [&](const char* key, fs::path& out) {
      if (!j.contains(key)) return;
      fs::path p = j[key].get<std::string>();
      out = p.is_absolute() ? p : base_dir / p;
    };
    endpoint("listen", c.listen);
    endpoint("hn", c.hn);
    endpoint("sn", c.sn);
    if (j.contains("protocol")) c.protocol = wire::parse_protocol(j["protocol"].get<std::string>());
    path("sk_hn", c.sk_hn);
    path("pk_hn", c.pk_hn);
    path("psk", c.psk);
    path("subscribers", c.subscribers);
    path("sqn_state", c.sqn_state);
    if (j.contains("id_sn")) c.id_sn = j["id_sn"].get<std::string>();
    if (j.contains("id_hn")) c.id_hn = j["id_hn"].get<std::string>();
    if (j.contains("timeout_ms")) c.timeout = std::chrono::milliseconds(j["timeout_ms"].get<std::int64_t>());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

EndpointConfig load_config(const fs::path& path) {
  return parse_config(read_text(path), fs::absolute(path).parent_path());
}

}  // namespace akalab::service
