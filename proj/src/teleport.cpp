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

#include "qtwsn/teleport.hpp"

#include <cmath>
#include <span>
#include <utility>

namespace qtwsn::teleport {

namespace {

constexpr std::array<Wire, 2> kSenderWires{1, 2};

std::string describe(const CascadeStep<double>& step) {
  std::string s = step.gate.name() + " on (";
  for (std::size_t i = 0; i < step.wires.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(step.wires[i]);
  }
  return s + ")";
}

Circuit build_circuit(Variant variant) {
  const auto h = standard_gate<double>("H");
  if (variant == Variant::Feynman) {
    const auto fg = feynman<double>();
    return {variant, 3, {{h, {2}}, {fg, {2, 3}}}, {{fg, {1, 2}}, {h, {1}}}, 0, 0};
  }
  // control on the ancilla fixed at |1> reduces B xor (A.C) to A xor B
  const auto tg = toffoli<double>({1, 3}, 2);
  return {variant, 4, {{h, {2}}, {tg, {2, 3, 4}}}, {{tg, {1, 2, 4}}, {h, {1}}}, 1, 1};
}

// Factors the ancilla (wire 4, held at |1>) out of a Toffoli-variant register.
State protocol_wires(const State& reg) {
  if (reg.n_qubits() == 3) return reg;
  State::Vector v(8);
  for (Eigen::Index i = 0; i < 8; ++i) {
    if (std::abs(reg[2 * i]) > Tolerance<double>::internal) {
      throw Error(ErrorCode::DimensionMismatch, "ancilla left |1>");
    }
    v(i) = reg[2 * i + 1];
  }
  return State(std::move(v));
}

State with_ancilla(const State& wires, const Circuit& circuit) {
  if (circuit.register_qubits == 3) return wires;
  return tensor(wires, State::basis(1, 1));
}

State payload_state(Complex alpha, Complex beta) {
  return new_qubit<double>(alpha, beta);
}

TeleportResult finish(const State& payload,
                      const std::pair<MeasurementRecord<double>, State>& measured) {
  const auto& [record, collapsed] = measured;
  TeleportResult result{ClassicalMessage{record.bits[0], record.bits[1]}, {},
                        remaining_qubits(collapsed, record), 0.0};
  result.correction = correction_for(result.message);
  result.receiver_state = apply_correction(result.receiver_state, result.correction);
  result.input_fidelity = fidelity(result.receiver_state, payload);
  return result;
}

}  // namespace

std::string_view to_string(Variant variant) {
  return variant == Variant::Feynman ? "feynman" : "toffoli";
}

Variant parse_variant(std::string_view text) {
  const std::string key = detail::upper(text);
  if (key == "FEYNMAN") return Variant::Feynman;
  if (key == "TOFFOLI") return Variant::Toffoli;
  throw Error(ErrorCode::InvalidArgument, "unknown variant '" + std::string(text) + "'");
}

std::vector<CascadeStep<double>> Circuit::steps() const {
  std::vector<CascadeStep<double>> all = pair_preparation;
  all.insert(all.end(), sender.begin(), sender.end());
  return all;
}

CascadeMetrics Circuit::metrics() const {
  const auto all = steps();
  return cascade_metrics(std::span<const CascadeStep<double>>(all),
                         constant_inputs, garbage_outputs);
}

const Circuit& circuit_for(Variant variant) {
  static const Circuit feynman_circuit = build_circuit(Variant::Feynman);
  static const Circuit toffoli_circuit = build_circuit(Variant::Toffoli);
  return variant == Variant::Feynman ? feynman_circuit : toffoli_circuit;
}

State make_epr_pair() {
  State s = State::basis(2, 0);
  s = apply_unitary(s, standard_gate<double>("H"), {1});
  return apply_unitary(s, feynman<double>(), {1, 2});
}

StageTrace run_stages(Complex alpha, Complex beta, Variant variant) {
  const Circuit& circuit = circuit_for(variant);
  State reg = with_ancilla(tensor(payload_state(alpha, beta), State::basis(2, 0)), circuit);

  StageTrace trace{variant, {}};
  trace.stages.push_back({"phi_0", "prepare", protocol_wires(reg)});
  for (const auto& step : circuit.steps()) {
    reg = apply_unitary(reg, step);
    trace.stages.push_back({"phi_" + std::to_string(trace.stages.size()),
                            describe(step), protocol_wires(reg)});
  }
  return trace;
}

std::vector<std::string> correction_for(const ClassicalMessage& message) {
  std::vector<std::string> gates;
  if (message.m2) gates.emplace_back("X");
  if (message.m1) gates.emplace_back("Z");
  return gates;
}

State apply_correction(const State& qubit, const std::vector<std::string>& gates) {
  State out = qubit;
  for (const auto& name : gates) out = apply_unitary(out, standard_gate<double>(name), {1});
  return out;
}

TeleportResult teleport(Complex alpha, Complex beta, Variant variant, Rng& rng) {
  const State payload = payload_state(alpha, beta);
  const State phi4 = run_stages(alpha, beta, variant).stages.back().state;
  return finish(payload, measure_qubits(phi4, std::span<const Wire>(kSenderWires), rng));
}

TeleportResult teleport_forced(Complex alpha, Complex beta, Variant variant,
                               const ClassicalMessage& message) {
  const State payload = payload_state(alpha, beta);
  const State phi4 = run_stages(alpha, beta, variant).stages.back().state;
  const std::array<int, 2> bits{message.m1, message.m2};
  return finish(payload,
                force_outcome(phi4, std::span<const Wire>(kSenderWires),
                              std::span<const int>(bits)));
}

namespace {

State sender_side(const State& payload, const State& pair, Variant variant) {
  if (payload.n_qubits() != 1 || pair.n_qubits() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "need a 1-qubit payload and a 2-qubit pair");
  }
  const Circuit& circuit = circuit_for(variant);
  State reg = with_ancilla(tensor(payload, pair), circuit);
  for (const auto& step : circuit.sender) reg = apply_unitary(reg, step);
  return protocol_wires(reg);
}

}  // namespace

TeleportResult teleport_over_pair(const State& payload, const State& pair,
                                  Variant variant, Rng& rng) {
  const State phi4 = sender_side(payload, pair, variant);
  return finish(payload, measure_qubits(phi4, std::span<const Wire>(kSenderWires), rng));
}

std::array<double, 4> outcome_masses(const State& payload, Variant variant) {
  const State phi4 = sender_side(payload, make_epr_pair(), variant);
  const auto masses = branch_masses(phi4, std::span<const Wire>(kSenderWires));
  return {masses[0], masses[1], masses[2], masses[3]};
}

namespace {

struct PrintedTerm {
  double alpha;
  double beta;
  int index;
};

struct PrintedStage {
  const char* text;
  std::vector<PrintedTerm> terms;
};

const std::vector<PrintedStage>& printed_stages(Variant variant) {
  const double r = 1.0 / std::sqrt(2.0);
  static const PrintedStage first{"alpha|000> + beta|100>", {{1, 0, 0b000}, {0, 1, 0b100}}};
  static const PrintedStage second{
      "alpha/sqrt2(|000> + |010>) + beta/sqrt2(|101> + |110>)",
      {{r, 0, 0b000}, {r, 0, 0b010}, {0, r, 0b101}, {0, r, 0b110}}};
  static const PrintedStage last{
      "1/2|00>(alpha|0> + beta|1>) + 1/2|01>(alpha|1> + beta|0>) + "
      "1/2|10>(alpha|0> - beta|1>) + 1/2|11>(alpha|1> - beta|0>)",
      {{0.5, 0, 0b000}, {0, 0.5, 0b001}, {0, 0.5, 0b010}, {0.5, 0, 0b011},
       {0.5, 0, 0b100}, {0, -0.5, 0b101}, {0.5, 0, 0b111}, {0, -0.5, 0b110}}};
  static const std::vector<PrintedStage> feynman_stages{
      first,
      second,
      {"alpha/sqrt2(|000> + |011>) + beta/sqrt2(|101> + |111>)",
       {{r, 0, 0b000}, {r, 0, 0b011}, {0, r, 0b101}, {0, r, 0b111}}},
      {"alpha/sqrt2(|000> + |011>) + beta/sqrt2(|111> + |101>)",
       {{r, 0, 0b000}, {r, 0, 0b011}, {0, r, 0b111}, {0, r, 0b101}}},
      last};
  static const std::vector<PrintedStage> toffoli_stages{
      first,
      second,
      {"alpha/sqrt2(|001> + |010>) + beta/sqrt2(|101> + |110>)",
       {{r, 0, 0b001}, {r, 0, 0b010}, {0, r, 0b101}, {0, r, 0b110}}},
      {"alpha/sqrt2(|000> + |010>) + beta/sqrt2(|101> + |110>)",
       {{r, 0, 0b000}, {r, 0, 0b010}, {0, r, 0b101}, {0, r, 0b110}}},
      last};
  return variant == Variant::Feynman ? feynman_stages : toffoli_stages;
}

State::Vector evaluate(const PrintedStage& printed, Complex alpha, Complex beta) {
  State::Vector v = State::Vector::Zero(8);
  for (const auto& t : printed.terms) v(t.index) += t.alpha * alpha + t.beta * beta;
  return v;
}

}  // namespace

std::vector<StageVerdict> compare_with_printed(Complex alpha, Complex beta,
                                               Variant variant) {
  const StageTrace trace = run_stages(alpha, beta, variant);
  const StageTrace zero_branch = run_stages(1.0, 0.0, variant);
  const StageTrace one_branch = run_stages(0.0, 1.0, variant);
  const auto& printed = printed_stages(variant);

  std::vector<StageVerdict> verdicts;
  for (std::size_t k = 0; k < trace.stages.size(); ++k) {
    const auto agrees = [&](const StageTrace& t, Complex a, Complex b) {
      const State::Vector diff = t.stages[k].state.amplitudes() - evaluate(printed[k], a, b);
      return diff.cwiseAbs().maxCoeff() <= Tolerance<double>::internal;
    };
    verdicts.push_back({trace.stages[k], printed[k].text,
                        agrees(zero_branch, 1.0, 0.0) && agrees(one_branch, 0.0, 1.0)});
  }
  return verdicts;
}

std::string paper_trace(Complex alpha, Complex beta, Variant variant) {
  std::string out;
  for (const auto& v : compare_with_printed(alpha, beta, variant)) {
    if (!out.empty()) out += "\n";
    out += "stage=" + v.stage.label + " variant=" + std::string(to_string(variant)) + "\n";
    out += to_trace(v.stage.state);
    out += "paper: " + v.printed + "\n";
    out += std::string("verdict: ") + (v.match ? "MATCH" : "MISMATCH") + "\n";
  }
  return out;
}

}  // namespace qtwsn::teleport
