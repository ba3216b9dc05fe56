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

#include "qtwsn/qstate.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <limits>

#include "oracle/matrix_oracle.hpp"
#include "qtwsn/gates.hpp"
#include "test_util.hpp"

namespace qtwsn {
namespace {

using C = std::complex<double>;
using State = PureState<double>;
constexpr double kTol = 1e-12;
const double kR = 1.0 / std::sqrt(2.0);

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::BadConfig;
}

std::span<const Wire> wires(std::initializer_list<Wire> w) { return {w.begin(), w.size()}; }

TEST(NewQubit, BasisZero) {
  const State s = new_qubit<double>(1.0, 0.0);
  EXPECT_EQ(s.n_qubits(), 1);
  EXPECT_EQ(s[0], C(1));
  EXPECT_EQ(s[1], C(0));
}

TEST(NewQubit, EqualSuperposition) {
  const State s = new_qubit<double>(kR, kR);
  EXPECT_NEAR(s.probability(0), 0.5, kTol);
  EXPECT_NEAR(s.probability(1), 0.5, kTol);
}

TEST(NewQubit, ComplexBeta) {
  const State s = new_qubit<double>(0.6, C(0, 0.8));
  EXPECT_NEAR(s.probability(1), 0.64, kTol);
}

TEST(NewQubit, RejectsUnnormalized) {
  EXPECT_EQ(code_of([] { (void)new_qubit<double>(1.0, 1.0); }), ErrorCode::NotNormalized);
  EXPECT_EQ(code_of([] { (void)new_qubit<double>(std::nan(""), 0.0); }),
            ErrorCode::NotNormalized);
}

TEST(NewQubit, WithinConstructionToleranceIsRescaled) {
  const State s = new_qubit<double>(1.0 + 4e-10, 0.0);
  EXPECT_NEAR(s.amplitudes().squaredNorm(), 1.0, kTol);
}

TEST(Tensor, BasisProducts) {
  const State zero = State::basis(1, 0);
  const State s = tensor(zero, State::basis(2, 0));
  ASSERT_EQ(s.dim(), 8);
  EXPECT_EQ(s[0], C(1));

  const State one = State::basis(1, 1);
  const State t = tensor(one, one);
  ASSERT_EQ(t.dim(), 4);
  EXPECT_EQ(t[3], C(1));
}

TEST(Tensor, PayloadTimesZeroZeroOccupiesIndicesZeroAndFour) {
  const C alpha(0.6, 0), beta(0, 0.8);
  const State s = tensor(new_qubit(alpha, beta), State::basis(2, 0));
  for (Eigen::Index i = 0; i < 8; ++i) {
    const C expected = i == 0 ? alpha : (i == 4 ? beta : C(0));
    EXPECT_NEAR(std::abs(s[i] - expected), 0.0, kTol) << i;
  }
}

TEST(Tensor, AssociativeExactlyOnDyadicStates) {
  // Dyadic real amplitudes multiply without rounding, so equality is bitwise.
  const State a(State::Vector{{C(0.5), C(-0.5), C(0, 0.5), C(0.5)}});
  const State b(State::Vector{{C(0, -0.5), C(0.5), C(0.5), C(-0.5)}});
  const State c(State::Vector{{C(-0.5), C(0.5), C(0.5), C(0, 0.5)}});
  EXPECT_EQ(tensor(tensor(a, b), c).amplitudes(), tensor(a, tensor(b, c)).amplitudes());
}

TEST(Tensor, AssociativeToRoundingOnRandomStates) {
  // Complex products round differently under regrouping; allow a few ulps.
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const State a = testing::random_state(1, gen);
    const State b = testing::random_state(2, gen);
    const State c = testing::random_state(1, gen);
    const auto diff = tensor(tensor(a, b), c).amplitudes() - tensor(a, tensor(b, c)).amplitudes();
    EXPECT_LE(diff.cwiseAbs().maxCoeff(), 8 * std::numeric_limits<double>::epsilon());
  }
}

TEST(ApplyUnitary, HadamardOnZero) {
  const State s = apply_unitary(State::basis(1, 0), standard_gate<double>("H"), {1});
  EXPECT_NEAR(std::abs(s[0] - kR), 0.0, kTol);
  EXPECT_NEAR(std::abs(s[1] - kR), 0.0, kTol);
}

TEST(ApplyUnitary, HadamardOnSecondQubitMatchesFullMatrix) {
  const C alpha(0.6, 0), beta(0, 0.8);
  const State phi0 = tensor(new_qubit(alpha, beta), State::basis(2, 0));
  const State phi1 = apply_unitary(phi0, standard_gate<double>("H"), {2});

  const oracle::Vec expected = oracle::single(3, 2, oracle::H()) *
                               oracle::kron(oracle::qubit(alpha, beta), oracle::basis(2, 0));
  EXPECT_LT((phi1.amplitudes() - expected).cwiseAbs().maxCoeff(), kTol);
  // alpha/sqrt2 at |000>,|010>; beta/sqrt2 at |100>,|110>
  EXPECT_NEAR(std::abs(phi1[0b000] - alpha * kR), 0.0, kTol);
  EXPECT_NEAR(std::abs(phi1[0b010] - alpha * kR), 0.0, kTol);
  EXPECT_NEAR(std::abs(phi1[0b100] - beta * kR), 0.0, kTol);
  EXPECT_NEAR(std::abs(phi1[0b110] - beta * kR), 0.0, kTol);
  EXPECT_NEAR(std::abs(phi1[0b101]), 0.0, kTol);
}

TEST(ApplyUnitary, FeynmanOnWiresTwoThreeBuildsCorrelation) {
  State s = State::basis(3, 0);
  s = apply_unitary(s, standard_gate<double>("H"), {2});
  s = apply_unitary(s, feynman<double>(), {2, 3});
  const oracle::Vec expected =
      oracle::controlled_x(3, {2}, 3) * oracle::single(3, 2, oracle::H()) * oracle::basis(3, 0);
  EXPECT_LT((s.amplitudes() - expected).cwiseAbs().maxCoeff(), kTol);
  EXPECT_NEAR(std::abs(s[0b000] - kR), 0.0, kTol);
  EXPECT_NEAR(std::abs(s[0b011] - kR), 0.0, kTol);
}

TEST(ApplyUnitary, WireErrors) {
  const State s = State::basis(3, 0);
  const auto h = standard_gate<double>("H");
  const auto fg = feynman<double>();
  EXPECT_EQ(code_of([&] { (void)apply_unitary(s, h, {4}); }), ErrorCode::WireOutOfRange);
  EXPECT_EQ(code_of([&] { (void)apply_unitary(s, h, {0}); }), ErrorCode::WireOutOfRange);
  EXPECT_EQ(code_of([&] { (void)apply_unitary(s, fg, {2, 2}); }), ErrorCode::DuplicateWire);
  EXPECT_EQ(code_of([&] { (void)apply_unitary(s, fg, {1}); }), ErrorCode::ArityMismatch);
}

TEST(ApplyUnitary, EmbeddingMatchesExplicitMatrixOnAnyWireOrder) {
  std::mt19937_64 gen(3);
  const auto fg = feynman<double>();
  const auto fr = fredkin<double>();
  for (int trial = 0; trial < 20; ++trial) {
    const State s = testing::random_state(3, gen);
    // identity on qubit 1, gate on (2,3)
    const oracle::Mat cnot(fg.matrix());
    EXPECT_LT((apply_unitary(s, fg, {2, 3}).amplitudes() -
               oracle::kron(oracle::I2(), cnot) * s.amplitudes())
                  .cwiseAbs()
                  .maxCoeff(),
              kTol);
    EXPECT_LT((apply_unitary(s, fg, {3, 1}).amplitudes() -
               oracle::controlled_x(3, {3}, 1) * s.amplitudes())
                  .cwiseAbs()
                  .maxCoeff(),
              kTol);
    EXPECT_LT((apply_unitary(s, fr, {2, 3, 1}).amplitudes() -
               oracle::controlled_swap(3, 2, 3, 1) * s.amplitudes())
                  .cwiseAbs()
                  .maxCoeff(),
              kTol);
  }
}

TEST(ApplyUnitary, PreservesInnerProducts) {
  std::mt19937_64 gen(5);
  const std::array<Gate<double>, 4> gates{standard_gate<double>("H"), standard_gate<double>("Y"),
                                          feynman<double>(), toffoli<double>()};
  for (int trial = 0; trial < 100; ++trial) {
    const State a = testing::random_state(4, gen);
    const State b = testing::random_state(4, gen);
    const auto& g = gates[static_cast<std::size_t>(trial) % gates.size()];
    std::vector<Wire> w{3, 1, 4};
    w.resize(static_cast<std::size_t>(g.arity()));
    const State ua = apply_unitary(a, g, std::span<const Wire>(w));
    const State ub = apply_unitary(b, g, std::span<const Wire>(w));
    EXPECT_LT(std::abs(ua.amplitudes().dot(ub.amplitudes()) - a.amplitudes().dot(b.amplitudes())),
              kTol);
    EXPECT_NEAR(ua.amplitudes().squaredNorm(), 1.0, kTol);
  }
}

TEST(Measure, DefiniteStateIsUnchanged) {
  Rng rng(1);
  const State zero = State::basis(1, 0);
  const auto [record, after] = measure_qubits(zero, wires({1}), rng);
  EXPECT_EQ(record.bits, std::vector<int>{0});
  EXPECT_DOUBLE_EQ(record.probability, 1.0);
  EXPECT_EQ(after.amplitudes(), zero.amplitudes());
}

TEST(Measure, BellPartnerAgrees) {
  State bell = apply_unitary(State::basis(2, 0), standard_gate<double>("H"), {1});
  bell = apply_unitary(bell, feynman<double>(), {1, 2});
  const auto masses = branch_masses(bell, wires({1}));
  EXPECT_NEAR(masses[0], 0.5, kTol);
  EXPECT_NEAR(masses[1], 0.5, kTol);

  Rng rng(7);
  std::array<int, 2> seen{0, 0};
  for (int i = 0; i < 200; ++i) {
    const auto [record, after] = measure_qubits(bell, wires({1}), rng);
    EXPECT_NEAR(record.probability, 0.5, kTol);
    const auto [partner, _] = force_outcome(after, wires({2}), std::array<int, 1>{record.bits[0]});
    EXPECT_NEAR(partner.probability, 1.0, kTol);
    ++seen[static_cast<std::size_t>(record.bits[0])];
  }
  EXPECT_GT(seen[0], 0);
  EXPECT_GT(seen[1], 0);
}

TEST(Measure, BranchMassesSumToOne) {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 50; ++trial) {
    const State s = testing::random_state(4, gen);
    for (const auto& w : {std::vector<Wire>{1}, std::vector<Wire>{2, 4}, std::vector<Wire>{4, 3, 1}}) {
      double total = 0;
      for (double m : branch_masses(s, std::span<const Wire>(w))) total += m;
      EXPECT_NEAR(total, 1.0, kTol);
    }
  }
}

TEST(Measure, RecordedProbabilityIsPreCollapseMass) {
  std::mt19937_64 gen(13);
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const State s = testing::random_state(3, gen);
    const auto masses = branch_masses(s, wires({1, 3}));
    const auto [record, after] = measure_qubits(s, wires({1, 3}), rng);
    EXPECT_NEAR(record.probability, masses[static_cast<std::size_t>(record.outcome())], kTol);
    EXPECT_NEAR(after.amplitudes().squaredNorm(), 1.0, kTol);
  }
}

TEST(Measure, SamplingIsDeterministicPerSeed) {
  const State s = apply_unitary(State::basis(2, 0), standard_gate<double>("H"), {1});
  Rng a(42), b(42);
  for (int i = 0; i < 50; ++i) {
    EXPECT_EQ(measure_qubits(s, wires({1}), a).first.bits,
              measure_qubits(s, wires({1}), b).first.bits);
  }
}

TEST(ForceOutcome, ZeroBranchIsRejected) {
  EXPECT_EQ(code_of([] {
              (void)force_outcome(State::basis(1, 0), wires({1}), std::array<int, 1>{1});
            }),
            ErrorCode::ZeroProbabilityBranch);
}

TEST(ForceOutcome, RemainingQubitsOfProductState) {
  const State s = tensor(State::basis(1, 1), new_qubit<double>(0.6, C(0, 0.8)));
  const auto [record, after] = force_outcome(s, wires({1}), std::array<int, 1>{1});
  const State rest = remaining_qubits(after, record);
  EXPECT_NEAR(std::abs(rest[0] - 0.6), 0.0, kTol);
  EXPECT_NEAR(std::abs(rest[1] - C(0, 0.8)), 0.0, kTol);
}

TEST(Fidelity, Examples) {
  const State zero = State::basis(1, 0);
  const State one = State::basis(1, 1);
  EXPECT_NEAR(fidelity(zero, zero), 1.0, kTol);
  EXPECT_NEAR(fidelity(zero, one), 0.0, kTol);
  EXPECT_NEAR(fidelity(zero, new_qubit<double>(kR, kR)), 0.5, kTol);
  EXPECT_EQ(code_of([&] { (void)fidelity(zero, State::basis(2, 0)); }),
            ErrorCode::DimensionMismatch);
}

TEST(ReducedDensity, ProductStateKeepsProjector) {
  const auto rho = reduced_density(tensor(State::basis(1, 0), State::basis(1, 1)), wires({1}));
  oracle::Mat expected(2, 2);
  expected << 1, 0, 0, 0;
  EXPECT_LT((rho.entries - expected).cwiseAbs().maxCoeff(), kTol);
}

TEST(ReducedDensity, BellHalfIsMaximallyMixed) {
  State bell = apply_unitary(State::basis(2, 0), standard_gate<double>("H"), {1});
  bell = apply_unitary(bell, feynman<double>(), {1, 2});
  const auto rho = reduced_density(bell, wires({1}));
  EXPECT_LT((rho.entries - 0.5 * oracle::I2()).cwiseAbs().maxCoeff(), kTol);
}

TEST(ReducedDensity, AgreesWithBruteForcePartialTrace) {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 30; ++trial) {
    const State s = testing::random_state(4, gen);
    for (const auto& keep : {std::vector<int>{3}, std::vector<int>{1, 4}, std::vector<int>{4, 2, 1}}) {
      const auto rho = reduced_density(s, std::span<const Wire>(keep));
      EXPECT_LT((rho.entries - oracle::partial_trace(s.amplitudes(), 4, keep)).cwiseAbs().maxCoeff(),
                kTol);
      EXPECT_TRUE(rho.is_valid());
    }
  }
}

TEST(ReducedDensity, Errors) {
  const State s = State::basis(2, 0);
  EXPECT_EQ(code_of([&] { (void)reduced_density(s, wires({3})); }), ErrorCode::WireOutOfRange);
  EXPECT_EQ(code_of([&] { (void)reduced_density(s, std::span<const Wire>{}); }),
            ErrorCode::WireOutOfRange);
}

TEST(Trace, FormatsNonzeroAmplitudesInIndexOrder) {
  const State s = tensor(new_qubit<double>(0.6, C(0, -0.8)), State::basis(1, 1));
  EXPECT_EQ(to_trace(s), "|01> 0.6+0i\n|11> 0-0.8i\n");
  EXPECT_EQ(format_amplitude<double>(C(-0.0, -0.0)), "0+0i");
  EXPECT_EQ(format_amplitude<double>(C(1.0 / 3.0, 0)), "0.333333333333+0i");
}

TEST(PureStateFloat, ScalarTemplateWorks) {
  PureState<float> s = PureState<float>::basis(2, 0);
  s = apply_unitary(s, standard_gate<float>("H"), {1});
  EXPECT_NEAR(s.probability(0), 0.5f, 1e-6f);
}

}  // namespace
}  // namespace qtwsn
