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
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "qtwsn/gates.hpp"
#include "qtwsn/qstate.hpp"
#include "qtwsn/rng.hpp"

namespace qtwsn::teleport {

using Complex = std::complex<double>;
using State = PureState<double>;

enum class Variant {
  /// H, Feynman(2->3), Feynman(1->2), H.
  Feynman,
  /// The Feynman circuit with each Feynman gate replaced by a Toffoli whose
  /// second control is an ancilla held at |1>.
  Toffoli,
};

std::string_view to_string(Variant variant);
/// "feynman" or "toffoli", case-insensitive.
Variant parse_variant(std::string_view text);

/// Gate cascade of one protocol variant. Wires 1..3 are payload, sender
/// half and receiver half; the Toffoli variant adds the ancilla as wire 4.
struct Circuit {
  Variant variant;
  int register_qubits;
  std::vector<CascadeStep<double>> pair_preparation;
  std::vector<CascadeStep<double>> sender;
  int constant_inputs;
  int garbage_outputs;

  std::vector<CascadeStep<double>> steps() const;
  CascadeMetrics metrics() const;
};

const Circuit& circuit_for(Variant variant);

struct Stage {
  std::string label;  // phi_0 .. phi_4
  std::string step;   // gate application that produced it
  State state;        // protocol wires 1..3 (ancilla factored out)
};

struct StageTrace {
  Variant variant;
  std::vector<Stage> stages;
};

struct ClassicalMessage {
  int m1 = 0;
  int m2 = 0;

  int outcome() const { return (m1 << 1) | m2; }
  static ClassicalMessage from_outcome(int outcome) {
    return {(outcome >> 1) & 1, outcome & 1};
  }
  bool operator==(const ClassicalMessage&) const = default;
};

struct TeleportResult {
  ClassicalMessage message;
  std::vector<std::string> correction;
  State receiver_state;
  double input_fidelity;
};

/// (|00> + |11>)/sqrt2, built by H then Feynman on |00>.
State make_epr_pair();

StageTrace run_stages(Complex alpha, Complex beta, Variant variant);

/// Pauli gates, in application order, that undo the receiver-side branch
/// selected by `message`.
std::vector<std::string> correction_for(const ClassicalMessage& message);

State apply_correction(const State& qubit, const std::vector<std::string>& gates);

TeleportResult teleport(Complex alpha, Complex beta, Variant variant, Rng& rng);

/// As teleport(), with the sender's measurement outcome chosen by the caller.
TeleportResult teleport_forced(Complex alpha, Complex beta, Variant variant,
                               const ClassicalMessage& message);

/// Teleports `payload` by consuming an existing two-qubit `pair` (sender half
/// first) rather than preparing a fresh one.
TeleportResult teleport_over_pair(const State& payload, const State& pair,
                                  Variant variant, Rng& rng);

/// Exact probabilities of the four sender outcomes (00, 01, 10, 11) for the
/// given payload, read off the pre-measurement state.
std::array<double, 4> outcome_masses(const State& payload, Variant variant);

struct StageVerdict {
  Stage stage;
  std::string printed;
  bool match;
};

/// Compares every computed stage with the published expression for it. A
/// stage matches when the printed expression agrees with the computed state
/// as a function of (alpha, beta), checked on both basis payloads.
std::vector<StageVerdict> compare_with_printed(Complex alpha, Complex beta,
                                               Variant variant);

/// Plain-text report: one block per stage with header
/// `stage=phi_k variant=<name>`, the computed state in trace format, the
/// printed expression and `verdict: MATCH|MISMATCH`.
std::string paper_trace(Complex alpha, Complex beta, Variant variant);

}  // namespace qtwsn::teleport
