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

#include <cmath>
#include <numeric>
#include <span>

#include "qtwsn/error.hpp"

namespace qtwsn::stats {

/// Pearson statistic sum (observed - n p)^2 / (n p).
inline double chi_square_statistic(std::span<const long> observed,
                                   std::span<const double> probabilities) {
  if (observed.size() != probabilities.size() || observed.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "one probability per cell");
  }
  const double n = static_cast<double>(std::accumulate(observed.begin(), observed.end(), 0L));
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = n * probabilities[i];
    const double d = static_cast<double>(observed[i]) - expected;
    stat += d * d / expected;
  }
  return stat;
}

/// Upper tail P(X >= x) of the chi-square law with integer `dof`, via
/// Q(x; k + 2) = Q(x; k) + (x/2)^(k/2) e^(-x/2) / Gamma(k/2 + 1).
inline double chi_square_sf(double x, int dof) {
  if (dof < 1) throw Error(ErrorCode::InvalidArgument, "dof must be >= 1");
  if (x <= 0.0) return 1.0;
  const double half = 0.5 * x;
  int k = dof % 2 == 1 ? 1 : 2;
  double q = k == 1 ? std::erfc(std::sqrt(half)) : std::exp(-half);
  for (; k < dof; k += 2) {
    const double a = 0.5 * k;
    q += std::exp(a * std::log(half) - half - std::lgamma(a + 1.0));
  }
  return q;
}

}  // namespace qtwsn::stats
