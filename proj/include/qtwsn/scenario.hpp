// Copyright 2026 The qtwsn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qtwsn/teleport.hpp"
#include "qtwsn/wsn.hpp"

namespace qtwsn::scenario {

struct KeyAction {
  wsn::NodeId from;
  wsn::NodeId to;
  int length = 0;
};

struct CompromiseAction {
  wsn::NodeId node;
};

struct AuditAction {};

using Action = std::variant<KeyAction, CompromiseAction, AuditAction>;

/// JSON scenario file:
///
///   {
///     "nodes": ["A", "B", "BS"],
///     "links": [["A", "BS"], ["B", "BS"]],   // optional, default star
///     "base_station": "BS",                  // optional, default "BS"
///     "pairs_per_link": 64,
///     "seed": 42,
///     "variant": "feynman",                  // optional
///     "actions": ["key A BS 32", "compromise A", "audit"]
///   }
///
/// Without "links" every other node is linked to the base station.
struct Config {
  std::vector<wsn::NodeId> nodes;
  std::vector<std::pair<wsn::NodeId, wsn::NodeId>> links;
  int pairs_per_link = 0;
  std::uint64_t seed = 0;
  teleport::Variant variant = teleport::Variant::Feynman;
  std::vector<Action> actions;
};

/// Throws Error(BadConfig) naming the offending field.
Config parse_config(const std::string& json_text);
Config load_config(const std::filesystem::path& path);

Action parse_action(const std::string& text);

struct Assertion {
  std::string name;
  bool passed;
};

struct Report {
  std::string text;
  /// Count of actions that ended in an error.
  int failed_actions = 0;
  std::vector<Assertion> assertions;

  bool ok() const;
};

/// Runs every action in order against a fresh deployment seeded from the
/// config. A failing action is reported and the run continues.
Report run(const Config& config);

}  // namespace qtwsn::scenario
