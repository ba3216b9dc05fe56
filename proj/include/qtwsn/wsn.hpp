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

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qtwsn/rng.hpp"
#include "qtwsn/teleport.hpp"

namespace qtwsn::wsn {

using NodeId = std::string;

/// Unordered node pair, stored with the endpoints sorted.
struct Link {
  NodeId a;
  NodeId b;

  static Link between(NodeId x, NodeId y) {
    return x < y ? Link{std::move(x), std::move(y)} : Link{std::move(y), std::move(x)};
  }
  bool touches(const NodeId& node) const { return a == node || b == node; }
  std::string label() const { return a + "-" + b; }
  auto operator<=>(const Link&) const = default;
};

enum class SlotStatus { Unused, Consumed };

struct PairSlot {
  std::uint64_t id = 0;
  SlotStatus status = SlotStatus::Unused;
  /// Stored entangled pair; destroyed when the slot is consumed.
  std::optional<teleport::State> pair;
};

struct PairInventory {
  Link link;
  std::vector<PairSlot> slots;

  int unused() const;
  int consumed() const;
};

struct LogEntry {
  Link link;
  teleport::ClassicalMessage message;
};

/// Nodes, per-link pair inventories and the public classical log. Evolved
/// only through the transition functions below.
class Deployment {
 public:
  const std::set<NodeId>& nodes() const { return nodes_; }
  const std::map<Link, PairInventory>& inventories() const { return inventories_; }
  const std::vector<LogEntry>& classical_log() const { return log_; }
  teleport::Variant variant() const { return variant_; }

  bool has_node(const NodeId& node) const { return nodes_.count(node) != 0; }
  /// Throws NoSuchLink.
  const PairInventory& inventory(const NodeId& x, const NodeId& y) const;

  /// Bits carried by each log entry. Simulator ground truth used by the
  /// audit; an adversary never sees it.
  const std::vector<int>& transmitted_bits() const { return transmitted_bits_; }

 private:
  friend Deployment allocate(const std::vector<NodeId>&,
                             const std::vector<std::pair<NodeId, NodeId>>&, int,
                             teleport::Variant);
  friend std::pair<int, Deployment> send_key_bit(Deployment, const NodeId&,
                                                 const NodeId&, int, Rng&);

  std::set<NodeId> nodes_;
  std::map<Link, PairInventory> inventories_;
  std::vector<LogEntry> log_;
  std::vector<int> transmitted_bits_;
  teleport::Variant variant_ = teleport::Variant::Feynman;
  std::uint64_t next_pair_id_ = 0;
};

struct KeyResult {
  Link link;
  std::vector<int> bits_sent;
  std::vector<int> bits_received;
  int pairs_consumed = 0;

  bool matches() const { return bits_sent == bits_received; }
};

struct LeakReport {
  NodeId compromised;
  std::map<Link, int> leaked_unused_pairs;
  int exposed_past_bits = 0;

  int total_leaked() const;
};

/// Outcome counts of the classical log, split by the transmitted bit value.
/// Outcomes are indexed 00, 01, 10, 11.
using ChannelHistogram = std::map<int, std::array<long, 4>>;

/// Pre-deployment allocation: every link receives `pairs_per_link` fresh
/// EPR pairs. Throws UnknownNode, DuplicateLink, InvalidArgument.
Deployment allocate(const std::vector<NodeId>& nodes,
                    const std::vector<std::pair<NodeId, NodeId>>& links,
                    int pairs_per_link,
                    teleport::Variant variant = teleport::Variant::Feynman);

/// Teleports |bit> over the next unused pair of the link, consuming it.
/// Throws UnknownNode, NoSuchLink, PairsExhausted.
std::pair<int, Deployment> send_key_bit(Deployment deployment, const NodeId& from,
                                        const NodeId& to, int bit, Rng& rng);

/// Draws `key_len` bits at the sender and sends them one by one. Fails with
/// PairsExhausted before consuming anything when the link is short.
std::pair<KeyResult, Deployment> distribute_key(Deployment deployment,
                                                const NodeId& from, const NodeId& to,
                                                int key_len, Rng& rng);

/// What an adversary holding `node` learns: its unconsumed pair halves, and
/// any past key bit still recoverable from stored material or the public log.
LeakReport compromise(const Deployment& deployment, const NodeId& node);

ChannelHistogram audit_classical_channel(const Deployment& deployment);

/// Largest difference between the exact outcome distributions for
/// transmitted bits 0 and 1. Zero means the log is independent of the key.
double channel_distinguishability(teleport::Variant variant);

}  // namespace qtwsn::wsn
