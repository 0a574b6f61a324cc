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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "akalab/aka/common.hpp"

namespace akalab::netlab {

class ScriptError : public std::runtime_error {
 public:
  ScriptError(std::size_t line, const std::string& reason);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Frame predicate: a message name ("M4", "SnChallenge", ...) or "*".
struct Match {
  std::string name;
  bool matches(const wire::Message& m) const;
};

struct Capture {
  std::string slot;
  Match match;
};
struct Replay {
  std::string slot;
  aka::Party to;
  std::optional<Match> after;
};
struct Drop {
  Match match;
};
struct Flip {
  Match match;
  std::size_t offset;  // into the body, after the frame header
};
struct Substitute {
  Match match;
  std::string slot;
};

using Action = std::variant<Capture, Replay, Drop, Flip, Substitute>;

// Dolev-Yao attacker on the UE-SN link. Captured frames live in named
// slots that persist across sessions; the rule list applies per session.
//
// Script lines:
//   capture <slot> <match>
//   replay <slot> to <ue|sn> [after <match>]
//   drop <match>
//   flip <match> <body-offset>
//   substitute <match> with <slot>
// Blank lines and '#' comments are ignored. Only `drop` also applies to the
// secure SN-HN link.
class Adversary {
 public:
  Adversary() = default;
  explicit Adversary(std::string_view script) { load(script); }

  // Replaces the rule set; slots are kept.
  void load(std::string_view script);
  void clear_rules() { actions_.clear(); }

  const std::vector<Action>& actions() const { return actions_; }

  std::optional<Bytes> slot(const std::string& name) const;
  void set_slot(const std::string& name, Bytes frame);

 private:
  std::vector<Action> actions_;
  std::map<std::string, Bytes> slots_;
};

}  // namespace akalab::netlab
