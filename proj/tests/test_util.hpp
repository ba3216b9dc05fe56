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

#include <complex>
#include <random>
#include <utility>

#include "qtwsn/qstate.hpp"

namespace qtwsn::testing {

/// Haar-ish random normalized (alpha, beta): Gaussian components, rescaled.
inline std::pair<std::complex<double>, std::complex<double>> random_pair(std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  std::complex<double> a(g(gen), g(gen)), b(g(gen), g(gen));
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  return {a / n, b / n};
}

inline PureState<double> random_state(int n_qubits, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  StateVector<double> v(Eigen::Index{1} << n_qubits);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = {g(gen), g(gen)};
  v.normalize();
  return PureState<double>(std::move(v));
}

}  // namespace qtwsn::testing
