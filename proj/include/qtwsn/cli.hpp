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
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qtwsn/teleport.hpp"

namespace qtwsn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitUsage = 2;

struct TeleportCommand {
  teleport::Complex alpha{1.0, 0.0};
  teleport::Complex beta{0.0, 0.0};
  teleport::Variant variant = teleport::Variant::Feynman;
  std::uint64_t seed = 0;
  int runs = 1;
};

struct TraceCommand {
  teleport::Complex alpha{1.0, 0.0};
  teleport::Complex beta{0.0, 0.0};
  teleport::Variant variant = teleport::Variant::Feynman;
};

struct GateCommand {
  enum class Action { Matrix, TruthTable };
  std::string name;
  Action action = Action::Matrix;
};

struct ScenarioCommand {
  std::filesystem::path config;
};

/// --help / --version: text to print, and the exit code to return.
struct InfoRequest {
  std::string text;
  int exit_code = kExitOk;
};

using Command =
    std::variant<TeleportCommand, TraceCommand, GateCommand, ScenarioCommand, InfoRequest>;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `re[+im i]`, e.g. "0.6", "0+1i", "0.5-0.5i", "-i".
teleport::Complex parse_complex(std::string_view text);

/// `args` excludes the program name. Throws UsageError.
Command parse_args(const std::vector<std::string>& args);

int run(const Command& command, std::ostream& out, std::ostream& err);

/// parse_args + run, mapping usage errors to exit code 2.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string version_line();

}  // namespace qtwsn::cli
