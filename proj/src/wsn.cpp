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

#include "qtwsn/wsn.hpp"

#include <algorithm>
#include <cmath>

namespace qtwsn::wsn {

namespace {

void require_node(const Deployment& d, const NodeId& node) {
  if (!d.has_node(node)) throw Error(ErrorCode::UnknownNode, "'" + node + "'");
}

teleport::State encode(int bit) {
  if (bit != 0 && bit != 1) throw Error(ErrorCode::InvalidArgument, "key bits are 0 or 1");
  return teleport::State::basis(1, bit);
}

int decode(const teleport::State& qubit) {
  // basis payloads arrive exactly; anything else is a protocol fault
  const double p1 = qubit.probability(1);
  if (std::abs(p1 - std::round(p1)) > 1e-10) {
    throw Error(ErrorCode::NotNormalized, "received qubit is not a basis state");
  }
  return p1 > 0.5 ? 1 : 0;
}

}  // namespace

int PairInventory::unused() const {
  return static_cast<int>(std::count_if(slots.begin(), slots.end(), [](const PairSlot& s) {
    return s.status == SlotStatus::Unused;
  }));
}

int PairInventory::consumed() const {
  return static_cast<int>(slots.size()) - unused();
}

const PairInventory& Deployment::inventory(const NodeId& x, const NodeId& y) const {
  const auto it = inventories_.find(Link::between(x, y));
  if (it == inventories_.end()) {
    throw Error(ErrorCode::NoSuchLink, Link::between(x, y).label());
  }
  return it->second;
}

int LeakReport::total_leaked() const {
  int total = 0;
  for (const auto& [link, n] : leaked_unused_pairs) total += n;
  return total;
}

Deployment allocate(const std::vector<NodeId>& nodes,
                    const std::vector<std::pair<NodeId, NodeId>>& links,
                    int pairs_per_link, teleport::Variant variant) {
  if (pairs_per_link < 0) {
    throw Error(ErrorCode::InvalidArgument, "pairs_per_link must be >= 0");
  }
  Deployment d;
  d.variant_ = variant;
  for (const auto& n : nodes) {
    if (!d.nodes_.insert(n).second) {
      throw Error(ErrorCode::InvalidArgument, "node '" + n + "' declared twice");
    }
  }
  const teleport::State epr = teleport::make_epr_pair();
  for (const auto& [x, y] : links) {
    require_node(d, x);
    require_node(d, y);
    if (x == y) throw Error(ErrorCode::InvalidArgument, "self link on '" + x + "'");
    const Link link = Link::between(x, y);
    if (d.inventories_.count(link)) throw Error(ErrorCode::DuplicateLink, link.label());
    PairInventory inv{link, {}};
    inv.slots.reserve(static_cast<std::size_t>(pairs_per_link));
    for (int i = 0; i < pairs_per_link; ++i) {
      inv.slots.push_back({d.next_pair_id_++, SlotStatus::Unused, epr});
    }
    d.inventories_.emplace(link, std::move(inv));
  }
  return d;
}

std::pair<int, Deployment> send_key_bit(Deployment deployment, const NodeId& from,
                                        const NodeId& to, int bit, Rng& rng) {
  require_node(deployment, from);
  require_node(deployment, to);
  const Link link = Link::between(from, to);
  auto it = deployment.inventories_.find(link);
  if (it == deployment.inventories_.end()) throw Error(ErrorCode::NoSuchLink, link.label());

  auto& slots = it->second.slots;
  auto slot = std::find_if(slots.begin(), slots.end(), [](const PairSlot& s) {
    return s.status == SlotStatus::Unused;
  });
  if (slot == slots.end()) {
    throw Error(ErrorCode::PairsExhausted, link.label() + " has no unused pairs");
  }

  const auto result =
      teleport::teleport_over_pair(encode(bit), *slot->pair, deployment.variant_, rng);
  slot->status = SlotStatus::Consumed;
  slot->pair.reset();
  deployment.log_.push_back({link, result.message});
  deployment.transmitted_bits_.push_back(bit);
  return {decode(result.receiver_state), std::move(deployment)};
}

std::pair<KeyResult, Deployment> distribute_key(Deployment deployment,
                                                const NodeId& from, const NodeId& to,
                                                int key_len, Rng& rng) {
  require_node(deployment, from);
  require_node(deployment, to);
  if (key_len < 0) throw Error(ErrorCode::InvalidArgument, "key length must be >= 0");
  const int available = deployment.inventory(from, to).unused();
  if (key_len > available) {
    throw Error(ErrorCode::PairsExhausted,
                Link::between(from, to).label() + " requested " + std::to_string(key_len) +
                    ", unused " + std::to_string(available));
  }

  KeyResult result{Link::between(from, to), {}, {}, 0};
  for (int i = 0; i < key_len; ++i) result.bits_sent.push_back(random_bit(rng));
  for (int bit : result.bits_sent) {
    auto [received, next] = send_key_bit(std::move(deployment), from, to, bit, rng);
    deployment = std::move(next);
    result.bits_received.push_back(received);
    ++result.pairs_consumed;
  }
  return {std::move(result), std::move(deployment)};
}

double channel_distinguishability(teleport::Variant variant) {
  const auto zero = teleport::outcome_masses(teleport::State::basis(1, 0), variant);
  const auto one = teleport::outcome_masses(teleport::State::basis(1, 1), variant);
  double worst = 0.0;
  for (std::size_t k = 0; k < zero.size(); ++k) {
    worst = std::max(worst, std::abs(zero[k] - one[k]));
  }
  return worst;
}

LeakReport compromise(const Deployment& deployment, const NodeId& node) {
  require_node(deployment, node);
  LeakReport report{node, {}, 0};
  const bool log_reveals_bits =
      channel_distinguishability(deployment.variant()) > Tolerance<double>::internal;
  for (const auto& [link, inv] : deployment.inventories()) {
    if (!link.touches(node)) continue;
    report.leaked_unused_pairs[link] = inv.unused();
    for (const auto& slot : inv.slots) {
      if (slot.status != SlotStatus::Consumed) continue;
      if (slot.pair.has_value() || log_reveals_bits) ++report.exposed_past_bits;
    }
  }
  return report;
}

ChannelHistogram audit_classical_channel(const Deployment& deployment) {
  ChannelHistogram histogram;
  const auto& log = deployment.classical_log();
  const auto& bits = deployment.transmitted_bits();
  for (std::size_t i = 0; i < log.size(); ++i) {
    auto& row = histogram.try_emplace(bits[i], std::array<long, 4>{0, 0, 0, 0}).first->second;
    ++row[static_cast<std::size_t>(log[i].message.outcome())];
  }
  return histogram;
}

}  // namespace qtwsn::wsn
