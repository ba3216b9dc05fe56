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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qtwsn/error.hpp"
#include "qtwsn/rng.hpp"

namespace qtwsn {

/// 1-based qubit position. Qubit 1 is the leftmost symbol of a ket and the
/// most significant bit of the amplitude index, so |100> is index 4.
using Wire = int;

template <typename Scalar>
using Amplitude = std::complex<Scalar>;

template <typename Scalar>
using StateVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using ComplexMatrix =
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
struct Tolerance {
  /// Accepted deviation of user-supplied amplitudes from unit norm.
  static constexpr Scalar construction = Scalar(1e-9);
  /// Invariant checks on values produced by the library itself.
  static constexpr Scalar internal = Scalar(1e-12);
  /// Branch mass below which an outcome is treated as impossible.
  static constexpr Scalar zero_branch = Scalar(1e-15);
};

template <>
struct Tolerance<float> {
  static constexpr float construction = 1e-5f;
  static constexpr float internal = 1e-5f;
  static constexpr float zero_branch = 1e-12f;
};

namespace detail {

inline int log2_exact(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return (Eigen::Index{1} << n) == dim ? n : -1;
}

inline Eigen::Index bit_of(Wire wire, int n_qubits) {
  return Eigen::Index{1} << (n_qubits - wire);
}

inline void check_wires(std::span<const Wire> wires, int n_qubits) {
  for (std::size_t i = 0; i < wires.size(); ++i) {
    if (wires[i] < 1 || wires[i] > n_qubits) {
      throw Error(ErrorCode::WireOutOfRange,
                  "qubit " + std::to_string(wires[i]) + " not in 1.." +
                      std::to_string(n_qubits));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (wires[i] == wires[j]) {
        throw Error(ErrorCode::DuplicateWire,
                    "qubit " + std::to_string(wires[i]) + " listed twice");
      }
    }
  }
}

// Index bits of `base` selected by `wires`, packed MSB-first (wires[0] is the
// most significant bit of the result).
inline Eigen::Index gather_bits(Eigen::Index base, std::span<const Wire> wires,
                                int n_qubits) {
  Eigen::Index out = 0;
  for (Wire w : wires) out = (out << 1) | ((base & bit_of(w, n_qubits)) ? 1 : 0);
  return out;
}

inline Eigen::Index scatter_bits(Eigen::Index local, std::span<const Wire> wires,
                                 int n_qubits) {
  Eigen::Index out = 0;
  const auto k = static_cast<int>(wires.size());
  for (int j = 0; j < k; ++j) {
    if ((local >> (k - 1 - j)) & 1) out |= bit_of(wires[j], n_qubits);
  }
  return out;
}

}  // namespace detail

/// Normalized pure state of n qubits as a dense amplitude vector.
template <typename Scalar = double>
class PureState {
 public:
  using Vector = StateVector<Scalar>;

  explicit PureState(Vector amplitudes) : amps_(std::move(amplitudes)) {
    n_ = detail::log2_exact(amps_.size());
    if (n_ < 1) {
      throw Error(ErrorCode::DimensionMismatch,
                  "amplitude count " + std::to_string(amps_.size()) +
                      " is not 2^n with n >= 1");
    }
    if (!amps_.allFinite()) {
      throw Error(ErrorCode::NotNormalized, "non-finite amplitude");
    }
    const Scalar deviation = std::abs(amps_.squaredNorm() - Scalar(1));
    if (deviation > Tolerance<Scalar>::internal) {
      throw Error(ErrorCode::NotNormalized,
                  "squared norm deviates from 1 by " + std::to_string(deviation));
    }
  }

  static PureState basis(int n_qubits, Eigen::Index index) {
    Vector v = Vector::Zero(Eigen::Index{1} << n_qubits);
    v(index) = Scalar(1);
    return PureState(std::move(v));
  }

  int n_qubits() const { return n_; }
  Eigen::Index dim() const { return amps_.size(); }
  const Vector& amplitudes() const { return amps_; }
  Amplitude<Scalar> operator[](Eigen::Index i) const { return amps_(i); }

  Scalar probability(Eigen::Index i) const { return std::norm(amps_(i)); }

 private:
  int n_ = 0;
  Vector amps_;
};

template <typename Scalar = double>
struct DensityMatrix {
  int n_qubits = 0;
  ComplexMatrix<Scalar> entries;

  /// Hermitian, unit trace and positive semidefinite within `tol`.
  bool is_valid(Scalar tol = Tolerance<Scalar>::internal) const {
    if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    if (std::abs(entries.trace() - std::complex<Scalar>(1)) > tol) return false;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> solver(
        entries, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -tol;
  }
};

template <typename Scalar = double>
struct MeasurementRecord {
  std::vector<Wire> measured;
  std::vector<int> bits;
  /// Mass of the observed branch before collapse.
  Scalar probability = 0;

  /// Outcome bits packed MSB-first, e.g. bits {1,0} -> 2.
  int outcome() const {
    int k = 0;
    for (int b : bits) k = (k << 1) | b;
    return k;
  }
};

/// alpha|0> + beta|1>. Inputs within the construction tolerance of unit norm
/// are rescaled onto the unit sphere.
template <typename Scalar>
PureState<Scalar> new_qubit(Amplitude<Scalar> alpha, Amplitude<Scalar> beta) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) ||
      !std::isfinite(beta.real()) || !std::isfinite(beta.imag())) {
    throw Error(ErrorCode::NotNormalized, "non-finite amplitude");
  }
  const Scalar norm2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(norm2 - Scalar(1)) > Tolerance<Scalar>::construction) {
    std::ostringstream os;
    os << std::setprecision(12) << "|alpha|^2 + |beta|^2 = " << norm2;
    throw Error(ErrorCode::NotNormalized, os.str());
  }
  typename PureState<Scalar>::Vector v(2);
  v << alpha, beta;
  v /= std::sqrt(norm2);
  return PureState<Scalar>(std::move(v));
}

/// a ⊗ b; a occupies the leading (most significant) qubits.
template <typename Scalar>
PureState<Scalar> tensor(const PureState<Scalar>& a, const PureState<Scalar>& b) {
  typename PureState<Scalar>::Vector v(a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    v.segment(i * b.dim(), b.dim()) = a[i] * b.amplitudes();
  }
  return PureState<Scalar>(std::move(v));
}

/// Applies the 2^k x 2^k matrix `u` to the listed wires. wires[0] carries the
/// most significant bit of the gate's local index.
template <typename Scalar, typename Derived>
PureState<Scalar> apply_unitary(const PureState<Scalar>& state,
                                const Eigen::MatrixBase<Derived>& u,
                                std::span<const Wire> wires) {
  const int n = state.n_qubits();
  const auto k = static_cast<int>(wires.size());
  if (k == 0 || u.rows() != (Eigen::Index{1} << k) || u.cols() != u.rows()) {
    throw Error(ErrorCode::ArityMismatch,
                std::to_string(u.rows()) + "x" + std::to_string(u.cols()) +
                    " matrix on " + std::to_string(k) + " wires");
  }
  detail::check_wires(wires, n);

  Eigen::Index wire_mask = 0;
  for (Wire w : wires) wire_mask |= detail::bit_of(w, n);

  const Eigen::Index local_dim = u.rows();
  std::vector<Eigen::Index> offsets(static_cast<std::size_t>(local_dim));
  for (Eigen::Index l = 0; l < local_dim; ++l) {
    offsets[static_cast<std::size_t>(l)] = detail::scatter_bits(l, wires, n);
  }

  const auto& in = state.amplitudes();
  typename PureState<Scalar>::Vector out(in.size());
  StateVector<Scalar> local(local_dim);
  for (Eigen::Index base = 0; base < in.size(); ++base) {
    if (base & wire_mask) continue;
    for (Eigen::Index l = 0; l < local_dim; ++l) {
      local(l) = in(base | offsets[static_cast<std::size_t>(l)]);
    }
    const StateVector<Scalar> mapped = u * local;
    for (Eigen::Index l = 0; l < local_dim; ++l) {
      out(base | offsets[static_cast<std::size_t>(l)]) = mapped(l);
    }
  }
  return PureState<Scalar>(std::move(out));
}

/// Probability mass of every outcome on `wires`, indexed by the packed
/// outcome bits (wires[0] most significant).
template <typename Scalar>
std::vector<Scalar> branch_masses(const PureState<Scalar>& state,
                                  std::span<const Wire> wires) {
  detail::check_wires(wires, state.n_qubits());
  std::vector<Scalar> masses(std::size_t{1} << wires.size(), Scalar(0));
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    masses[static_cast<std::size_t>(
        detail::gather_bits(i, wires, state.n_qubits()))] += state.probability(i);
  }
  return masses;
}

namespace detail {

template <typename Scalar>
std::pair<MeasurementRecord<Scalar>, PureState<Scalar>> collapse(
    const PureState<Scalar>& state, std::span<const Wire> wires, int outcome,
    Scalar mass) {
  const int n = state.n_qubits();
  typename PureState<Scalar>::Vector v = state.amplitudes();
  const Scalar scale = Scalar(1) / std::sqrt(mass);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (gather_bits(i, wires, n) == outcome) {
      v(i) *= scale;
    } else {
      v(i) = Scalar(0);
    }
  }
  MeasurementRecord<Scalar> record;
  record.measured.assign(wires.begin(), wires.end());
  const auto k = static_cast<int>(wires.size());
  for (int j = 0; j < k; ++j) record.bits.push_back((outcome >> (k - 1 - j)) & 1);
  record.probability = mass;
  return {std::move(record), PureState<Scalar>(std::move(v))};
}

}  // namespace detail

/// Projective computational-basis measurement of `wires`, sampled with Born
/// probabilities from `rng`.
template <typename Scalar>
std::pair<MeasurementRecord<Scalar>, PureState<Scalar>> measure_qubits(
    const PureState<Scalar>& state, std::span<const Wire> wires, Rng& rng) {
  const std::vector<Scalar> masses = branch_masses(state, wires);
  const Scalar u = static_cast<Scalar>(uniform01(rng));
  int chosen = -1;
  Scalar cumulative = 0;
  for (std::size_t k = 0; k < masses.size(); ++k) {
    if (masses[k] < Tolerance<Scalar>::zero_branch) continue;
    chosen = static_cast<int>(k);
    cumulative += masses[k];
    if (u < cumulative) break;
  }
  // rounding can leave u just above the final cumulative sum; `chosen` then
  // holds the last possible branch
  return detail::collapse(state, wires, chosen,
                          masses[static_cast<std::size_t>(chosen)]);
}

/// Collapses onto the requested branch without sampling.
template <typename Scalar>
std::pair<MeasurementRecord<Scalar>, PureState<Scalar>> force_outcome(
    const PureState<Scalar>& state, std::span<const Wire> wires,
    std::span<const int> bits) {
  if (bits.size() != wires.size()) {
    throw Error(ErrorCode::ArityMismatch, "one bit required per measured qubit");
  }
  int outcome = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw Error(ErrorCode::ArityMismatch, "bits must be 0 or 1");
    outcome = (outcome << 1) | b;
  }
  const std::vector<Scalar> masses = branch_masses(state, wires);
  const Scalar mass = masses[static_cast<std::size_t>(outcome)];
  if (mass < Tolerance<Scalar>::zero_branch) {
    throw Error(ErrorCode::ZeroProbabilityBranch,
                "requested branch has mass " + std::to_string(mass));
  }
  return detail::collapse(state, wires, outcome, mass);
}

/// State of the unmeasured qubits after a collapse, in their original order.
template <typename Scalar>
PureState<Scalar> remaining_qubits(const PureState<Scalar>& collapsed,
                                   const MeasurementRecord<Scalar>& record) {
  const int n = collapsed.n_qubits();
  std::vector<Wire> rest;
  for (Wire w = 1; w <= n; ++w) {
    if (std::find(record.measured.begin(), record.measured.end(), w) ==
        record.measured.end()) {
      rest.push_back(w);
    }
  }
  if (rest.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "every qubit was measured");
  }
  const Eigen::Index fixed = detail::scatter_bits(record.outcome(), record.measured, n);
  typename PureState<Scalar>::Vector v(Eigen::Index{1} << rest.size());
  for (Eigen::Index l = 0; l < v.size(); ++l) {
    v(l) = collapsed[fixed | detail::scatter_bits(l, rest, n)];
  }
  return PureState<Scalar>(std::move(v));
}

/// |<a|b>|^2.
template <typename Scalar>
Scalar fidelity(const PureState<Scalar>& a, const PureState<Scalar>& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(a.n_qubits()) + " vs " +
                    std::to_string(b.n_qubits()) + " qubits");
  }
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

/// Partial trace over every qubit not in `keep`; the result's qubit order is
/// the order of `keep`.
template <typename Scalar>
DensityMatrix<Scalar> reduced_density(const PureState<Scalar>& state,
                                      std::span<const Wire> keep) {
  const int n = state.n_qubits();
  if (keep.empty()) throw Error(ErrorCode::WireOutOfRange, "nothing to keep");
  detail::check_wires(keep, n);

  std::vector<Wire> traced;
  for (Wire w = 1; w <= n; ++w) {
    if (std::find(keep.begin(), keep.end(), w) == keep.end()) traced.push_back(w);
  }
  const Eigen::Index kept_dim = Eigen::Index{1} << keep.size();
  const Eigen::Index env_dim = Eigen::Index{1} << traced.size();

  // column e of `blocks` is the kept-subsystem vector for environment state e
  ComplexMatrix<Scalar> blocks(kept_dim, env_dim);
  for (Eigen::Index e = 0; e < env_dim; ++e) {
    const Eigen::Index env = detail::scatter_bits(e, traced, n);
    for (Eigen::Index r = 0; r < kept_dim; ++r) {
      blocks(r, e) = state[env | detail::scatter_bits(r, keep, n)];
    }
  }
  return {static_cast<int>(keep.size()), blocks * blocks.adjoint()};
}

/// `re<sign>im` + "i", 12 significant digits, negative zero printed as 0.
template <typename Scalar>
std::string format_amplitude(Amplitude<Scalar> c) {
  auto clean = [](Scalar x) { return x == Scalar(0) ? Scalar(0) : x; };
  const Scalar re = clean(c.real());
  const Scalar im = clean(c.imag());
  std::ostringstream os;
  os << std::setprecision(12) << re << (std::signbit(im) ? '-' : '+')
     << std::abs(im) << 'i';
  return os.str();
}

inline std::string ket_label(Eigen::Index index, int n_qubits) {
  std::string s = "|";
  for (int q = 1; q <= n_qubits; ++q) {
    s += (index & detail::bit_of(q, n_qubits)) ? '1' : '0';
  }
  return s + ">";
}

/// One line per amplitude with magnitude >= 1e-12, in basis-index order:
/// `|b1...bn> re<sign>im i`.
template <typename Scalar>
std::string to_trace(const PureState<Scalar>& state) {
  std::string out;
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    if (std::abs(state[i]) < Scalar(1e-12)) continue;
    out += ket_label(i, state.n_qubits()) + " " +
           format_amplitude<Scalar>(state[i]) + "\n";
  }
  return out;
}

}  // namespace qtwsn
