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

#include "akalab/netlab/adversary.hpp"

#include <charconv>
#include <sstream>

namespace akalab::netlab {

ScriptError::ScriptError(std::size_t line, const std::string& reason)
    : std::runtime_error("scenario line " + std::to_string(line) + ": " + reason), line_(line) {}

bool Match::matches(const wire::Message& m) const { return name == "*" || wire::message_name(m) == name; }

namespace {

bool known_message(const std::string& name) {
  if (name == "*") return true;
  for (int t = 0; t < 256; ++t) {
    if (wire::message_name(static_cast<std::uint8_t>(t)) == name) return true;
  }
  return false;
}

Match parse_match(const std::string& tok, std::size_t line) {
  if (!known_message(tok)) throw ScriptError(line, "unknown message name '" + tok + "'");
  return {tok};
}

}  // namespace

void Adversary::load(std::string_view script) {
  std::vector<Action> parsed;
  std::istringstream in{std::string(script)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    const std::string& verb = tok[0];
    if (verb == "capture" && tok.size() == 3) {
      parsed.emplace_back(Capture{tok[1], parse_match(tok[2], line)});
    } else if (verb == "replay" && (tok.size() == 4 || tok.size() == 6) && tok[2] == "to") {
      aka::Party to;
      if (tok[3] == "ue") {
        to = aka::Party::ue;
      } else if (tok[3] == "sn") {
        to = aka::Party::sn;
      } else {
        throw ScriptError(line, "replay target must be ue or sn");
      }
      std::optional<Match> after;
      if (tok.size() == 6) {
        if (tok[4] != "after") throw ScriptError(line, "expected 'after <match>'");
        after = parse_match(tok[5], line);
      }
      parsed.emplace_back(Replay{tok[1], to, after});
    } else if (verb == "drop" && tok.size() == 2) {
      parsed.emplace_back(Drop{parse_match(tok[1], line)});
    } else if (verb == "flip" && tok.size() == 3) {
      std::size_t offset = 0;
      const auto& digits = tok[2];
      const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), offset);
      if (ec != std::errc{} || end != digits.data() + digits.size()) {
        throw ScriptError(line, "flip offset must be a non-negative integer");
      }
      parsed.emplace_back(Flip{parse_match(tok[1], line), offset});
    } else if (verb == "substitute" && tok.size() == 4 && tok[2] == "with") {
      parsed.emplace_back(Substitute{parse_match(tok[1], line), tok[3]});
    } else {
      throw ScriptError(line, "cannot parse '" + raw + "'");
    }
  }
  actions_ = std::move(parsed);
}

std::optional<Bytes> Adversary::slot(const std::string& name) const {
  auto it = slots_.find(name);
  if (it == slots_.end()) return std::nullopt;
  return it->second;
}

void Adversary::set_slot(const std::string& name, Bytes frame) { slots_[name] = std::move(frame); }

}  // namespace akalab::netlab
