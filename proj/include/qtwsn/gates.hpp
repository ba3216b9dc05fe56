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

#include <Eigen/Dense>

#include <array>
#include <cctype>
#include <cstdio>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qtwsn/error.hpp"
#include "qtwsn/qstate.hpp"

namespace qtwsn {

/// A named unitary on `arity` qubits. Construction rejects non-unitary
/// matrices, so every Gate value satisfies U^dagger U = I.
template <typename Scalar = double>
class Gate {
 public:
  using Matrix = ComplexMatrix<Scalar>;

  Gate(std::string name, Matrix matrix)
      : name_(std::move(name)), matrix_(std::move(matrix)) {
    arity_ = detail::log2_exact(matrix_.rows());
    if (arity_ < 1 || matrix_.rows() != matrix_.cols()) {
      throw Error(ErrorCode::ArityMismatch,
                  name_ + ": matrix is not 2^k x 2^k");
    }
    const Matrix defect =
        matrix_.adjoint() * matrix_ - Matrix::Identity(matrix_.rows(), matrix_.cols());
    if (defect.cwiseAbs().maxCoeff() > Tolerance<Scalar>::internal) {
      throw Error(ErrorCode::NotUnitary, name_);
    }
  }

  const std::string& name() const { return name_; }
  int arity() const { return arity_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  std::string name_;
  int arity_ = 0;
  Matrix matrix_;
};

/// Bijection on basis labels realized by a permutation gate.
struct TruthTable {
  int arity = 0;
  std::vector<int> mapping;
};

template <typename Scalar = double>
struct CascadeStep {
  Gate<Scalar> gate;
  std::vector<Wire> wires;
};

struct CascadeMetrics {
  int gate_count = 0;
  int constant_inputs = 0;
  int garbage_outputs = 0;
};

template <typename Scalar>
PureState<Scalar> apply_unitary(const PureState<Scalar>& state,
                                const Gate<Scalar>& gate,
                                std::span<const Wire> wires) {
  if (static_cast<int>(wires.size()) != gate.arity()) {
    throw Error(ErrorCode::ArityMismatch,
                gate.name() + " acts on " + std::to_string(gate.arity()) +
                    " qubits, " + std::to_string(wires.size()) + " wires given");
  }
  return apply_unitary(state, gate.matrix(), wires);
}

template <typename Scalar>
PureState<Scalar> apply_unitary(const PureState<Scalar>& state,
                                const CascadeStep<Scalar>& step) {
  return apply_unitary(state, step.gate, std::span<const Wire>(step.wires));
}

template <typename Scalar>
PureState<Scalar> apply_unitary(const PureState<Scalar>& state,
                                const Gate<Scalar>& gate,
                                std::initializer_list<Wire> wires) {
  return apply_unitary(state, gate,
                       std::span<const Wire>(wires.begin(), wires.size()));
}

namespace detail {

inline std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

// Permutation matrix with column i holding a 1 in row image(i).
template <typename Scalar>
Gate<Scalar> permutation_gate(std::string name, int arity,
                              const std::function<int(int)>& image) {
  const int dim = 1 << arity;
  ComplexMatrix<Scalar> m = ComplexMatrix<Scalar>::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) m(image(i), i) = Scalar(1);
  return Gate<Scalar>(std::move(name), std::move(m));
}

}  // namespace detail

/// One of I, X, Y, Z, H (case-insensitive).
template <typename Scalar = double>
Gate<Scalar> standard_gate(std::string_view name) {
  using C = std::complex<Scalar>;
  const std::string key = detail::upper(name);
  ComplexMatrix<Scalar> m(2, 2);
  if (key == "I") {
    m << C(1), C(0), C(0), C(1);
  } else if (key == "X") {
    m << C(0), C(1), C(1), C(0);
  } else if (key == "Y") {
    m << C(0), C(0, -1), C(0, 1), C(0);
  } else if (key == "Z") {
    m << C(1), C(0), C(0), C(-1);
  } else if (key == "H") {
    const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
    m << C(r), C(r), C(r), C(-r);
  } else {
    throw Error(ErrorCode::UnknownGate, std::string(name));
  }
  return Gate<Scalar>(key, std::move(m));
}

/// Feynman gate: (A, B) -> (A, A xor B), first wire is the control.
template <typename Scalar = double>
Gate<Scalar> feynman() {
  return detail::permutation_gate<Scalar>("FG", 2, [](int i) {
    return (i & 2) ? (i ^ 1) : i;
  });
}

/// Toffoli gate with the target on `target` and controls on the other two
/// local wires (positions 1..3, wire 1 most significant). The default wiring
/// {1,3} -> 2 gives middle output B xor (A.C).
template <typename Scalar = double>
Gate<Scalar> toffoli(std::array<Wire, 2> controls = {1, 3}, Wire target = 2) {
  const std::array<Wire, 3> all{controls[0], controls[1], target};
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i] < 1 || all[i] > 3) {
      throw Error(ErrorCode::BadWiring, "wire " + std::to_string(all[i]) + " not in 1..3");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (all[i] == all[j]) {
        throw Error(ErrorCode::BadWiring, "wire " + std::to_string(all[i]) + " repeated");
      }
    }
  }
  auto bit = [](Wire w) { return 1 << (3 - w); };
  const int control_mask = bit(controls[0]) | bit(controls[1]);
  const int target_bit = bit(target);
  const Wire c_lo = std::min(controls[0], controls[1]);
  const Wire c_hi = std::max(controls[0], controls[1]);
  return detail::permutation_gate<Scalar>(
      "TG(c=" + std::to_string(c_lo) + "," + std::to_string(c_hi) +
          ";t=" + std::to_string(target) + ")",
      3, [=](int i) { return (i & control_mask) == control_mask ? i ^ target_bit : i; });
}

/// Fredkin gate: wire 1 controls a swap of wires 2 and 3.
template <typename Scalar = double>
Gate<Scalar> fredkin() {
  return detail::permutation_gate<Scalar>("FRG", 3, [](int i) {
    if (!(i & 4)) return i;
    return 4 | ((i & 1) << 1) | ((i & 2) >> 1);
  });
}

/// Parses the textual gate names I, X, Y, Z, H, FG, TG, FRG
/// (case-insensitive). TG takes an optional wiring suffix such as
/// `TG(c=1,2;t=3)`; bare TG is the {1,3} -> 2 wiring.
template <typename Scalar = double>
Gate<Scalar> parse_gate(std::string_view text) {
  std::string key;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      key += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
  }
  if (key == "FG") return feynman<Scalar>();
  if (key == "FRG") return fredkin<Scalar>();
  if (key == "TG") return toffoli<Scalar>();
  if (key.starts_with("TG(") && key.ends_with(")")) {
    // TG(C=a,b;T=c)
    const std::string body = key.substr(3, key.size() - 4);
    int c1 = 0, c2 = 0, t = 0;
    char tail = 0;
    if (std::sscanf(body.c_str(), "C=%d,%d;T=%d%c", &c1, &c2, &t, &tail) != 3) {
      throw Error(ErrorCode::BadWiring, "cannot parse wiring '" + std::string(text) + "'");
    }
    return toffoli<Scalar>({c1, c2}, t);
  }
  return standard_gate<Scalar>(key);
}

/// Classical view of a 0/1 permutation gate.
template <typename Scalar>
TruthTable truth_table(const Gate<Scalar>& gate) {
  const auto& m = gate.matrix();
  const Scalar tol = Tolerance<Scalar>::internal;
  TruthTable table{gate.arity(), std::vector<int>(static_cast<std::size_t>(m.cols()), -1)};
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    for (Eigen::Index row = 0; row < m.rows(); ++row) {
      const auto v = m(row, col);
      if (std::abs(v - std::complex<Scalar>(1)) <= tol) {
        if (table.mapping[static_cast<std::size_t>(col)] != -1) {
          throw Error(ErrorCode::NotClassical, gate.name());
        }
        table.mapping[static_cast<std::size_t>(col)] = static_cast<int>(row);
      } else if (std::abs(v) > tol) {
        throw Error(ErrorCode::NotClassical, gate.name());
      }
    }
    if (table.mapping[static_cast<std::size_t>(col)] == -1) {
      throw Error(ErrorCode::NotClassical, gate.name());
    }
  }
  return table;
}

/// Bookkeeping only: constant inputs and garbage outputs are declared by the
/// caller, not inferred from the cascade.
template <typename Scalar>
CascadeMetrics cascade_metrics(std::span<const CascadeStep<Scalar>> cascade,
                               int declared_constant_inputs,
                               int declared_garbage_outputs) {
  if (declared_constant_inputs < 0 || declared_garbage_outputs < 0) {
    throw Error(ErrorCode::InvalidArgument, "declared counts must be nonnegative");
  }
  return {static_cast<int>(cascade.size()), declared_constant_inputs,
          declared_garbage_outputs};
}

}  // namespace qtwsn
