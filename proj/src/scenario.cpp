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

#include "qtwsn/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "qtwsn/stats.hpp"

namespace qtwsn::scenario {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::BadConfig, what); }

const json& field(const json& root, const char* name) {
  if (!root.contains(name)) bad(std::string("missing field '") + name + "'");
  return root.at(name);
}

std::string bits_string(const std::vector<int>& bits) {
  std::string s;
  for (int b : bits) s += b ? '1' : '0';
  return s;
}

std::string histogram_row(const std::array<long, 4>& row) {
  static constexpr std::array<const char*, 4> kLabels{"00", "01", "10", "11"};
  std::ostringstream os;
  for (std::size_t k = 0; k < row.size(); ++k) {
    os << (k ? " " : "") << kLabels[k] << "=" << row[k];
  }
  const std::array<double, 4> uniform{0.25, 0.25, 0.25, 0.25};
  const double stat = stats::chi_square_statistic(row, uniform);
  os << std::fixed << std::setprecision(6) << " chi2=" << stat
     << " p=" << stats::chi_square_sf(stat, 3);
  return os.str();
}

bool exact_uniform_and_independent(teleport::Variant variant) {
  for (int bit : {0, 1}) {
    for (double m : teleport::outcome_masses(teleport::State::basis(1, bit), variant)) {
      if (std::abs(m - 0.25) > Tolerance<double>::internal) return false;
    }
  }
  return wsn::channel_distinguishability(variant) <= Tolerance<double>::internal;
}

}  // namespace

Action parse_action(const std::string& text) {
  std::istringstream is(text);
  std::vector<std::string> words;
  for (std::string w; is >> w;) words.push_back(w);
  if (words.size() == 4 && words[0] == "key") {
    std::size_t used = 0;
    int len = -1;
    try {
      len = std::stoi(words[3], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != words[3].size() || len < 0) bad("bad key length in action '" + text + "'");
    return KeyAction{words[1], words[2], len};
  }
  if (words.size() == 2 && words[0] == "compromise") return CompromiseAction{words[1]};
  if (words.size() == 1 && words[0] == "audit") return AuditAction{};
  bad("unrecognized action '" + text + "'");
}

Config parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad(std::string("not valid JSON: ") + e.what());
  }
  if (!root.is_object()) bad("top level must be an object");

  Config config;
  try {
    config.nodes = field(root, "nodes").get<std::vector<std::string>>();
    config.pairs_per_link = field(root, "pairs_per_link").get<int>();
    config.seed = field(root, "seed").get<std::uint64_t>();
    if (root.contains("variant")) {
      config.variant = teleport::parse_variant(root.at("variant").get<std::string>());
    }
    if (root.contains("links")) {
      for (const auto& pair : root.at("links")) {
        const auto ends = pair.get<std::vector<std::string>>();
        if (ends.size() != 2) bad("each link must list exactly two nodes");
        config.links.emplace_back(ends[0], ends[1]);
      }
    } else {
      const std::string bs = root.value("base_station", std::string("BS"));
      if (std::find(config.nodes.begin(), config.nodes.end(), bs) == config.nodes.end()) {
        bad("base station '" + bs + "' is not a declared node");
      }
      for (const auto& n : config.nodes) {
        if (n != bs) config.links.emplace_back(n, bs);
      }
    }
    for (const auto& a : field(root, "actions")) {
      config.actions.push_back(parse_action(a.get<std::string>()));
    }
  } catch (const json::exception& e) {
    bad(std::string("wrong field type: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BadConfig) throw;
    bad(e.what());
  }
  return config;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

bool Report::ok() const {
  if (failed_actions != 0) return false;
  return std::all_of(assertions.begin(), assertions.end(),
                     [](const Assertion& a) { return a.passed; });
}

Report run(const Config& config) {
  Report report;
  std::ostringstream out;
  Rng rng(config.seed);

  out << "scenario variant=" << teleport::to_string(config.variant)
      << " seed=" << config.seed << " pairs_per_link=" << config.pairs_per_link << "\n";
  out << "nodes:";
  for (const auto& n : config.nodes) out << " " << n;
  out << "\n";

  wsn::Deployment deployment =
      wsn::allocate(config.nodes, config.links, config.pairs_per_link, config.variant);
  for (const auto& [link, inv] : deployment.inventories()) {
    out << "link " << link.label() << " pairs=" << inv.slots.size() << "\n";
  }

  bool keys_correct = true;
  bool compromise_sound = true;
  int step = 0;
  for (const auto& action : config.actions) {
    ++step;
    try {
      if (const auto* key = std::get_if<KeyAction>(&action)) {
        out << "action " << step << ": key " << key->from << " " << key->to << " "
            << key->length << "\n";
        auto [result, next] =
            wsn::distribute_key(deployment, key->from, key->to, key->length, rng);
        deployment = std::move(next);
        keys_correct = keys_correct && result.matches() &&
                       result.pairs_consumed == key->length;
        out << "  result: ok\n"
            << "  bits_sent: " << bits_string(result.bits_sent) << "\n"
            << "  bits_received: " << bits_string(result.bits_received) << "\n"
            << "  pairs_consumed: " << result.pairs_consumed << "\n";
      } else if (const auto* c = std::get_if<CompromiseAction>(&action)) {
        out << "action " << step << ": compromise " << c->node << "\n";
        const wsn::LeakReport leak = wsn::compromise(deployment, c->node);
        out << "  result: ok\n";
        for (const auto& [link, n] : leak.leaked_unused_pairs) {
          out << "  leaked " << link.label() << ": " << n << "\n";
          // recount from the stored material itself
          int holding = 0;
          for (const auto& slot : deployment.inventories().at(link).slots) {
            holding += slot.pair.has_value() ? 1 : 0;
          }
          compromise_sound = compromise_sound && holding == n;
        }
        out << "  leaked_total: " << leak.total_leaked() << "\n"
            << "  exposed_past_bits: " << leak.exposed_past_bits << "\n";
        compromise_sound = compromise_sound && leak.exposed_past_bits == 0;
      } else {
        out << "action " << step << ": audit\n";
        out << "  result: ok\n";
        for (const auto& [bit, row] : wsn::audit_classical_channel(deployment)) {
          out << "  bit=" << bit << " " << histogram_row(row) << "\n";
        }
      }
    } catch (const Error& e) {
      ++report.failed_actions;
      out << "  result: error " << e.what() << "\n";
    }
  }

  for (const auto& [link, inv] : deployment.inventories()) {
    out << "inventory " << link.label() << " unused=" << inv.unused()
        << " consumed=" << inv.consumed() << "\n";
  }
  out << "classical_log: " << deployment.classical_log().size() << " messages\n";
  for (const auto& [bit, row] : wsn::audit_classical_channel(deployment)) {
    out << "histogram bit=" << bit << " " << histogram_row(row) << "\n";
  }

  report.assertions = {{"key_correctness", keys_correct},
                       {"compromise_soundness", compromise_sound},
                       {"channel_independence", exact_uniform_and_independent(config.variant)}};
  for (const auto& a : report.assertions) {
    out << "assert " << a.name << ": " << (a.passed ? "PASS" : "FAIL") << "\n";
  }
  report.text = out.str();
  report.text += std::string("status: ") + (report.ok() ? "OK" : "FAIL") + "\n";
  return report;
}

}  // namespace qtwsn::scenario
