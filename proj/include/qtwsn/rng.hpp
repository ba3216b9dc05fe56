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

#include <cstdint>
#include <random>

namespace qtwsn {

/// The one random stream type threaded explicitly through every stochastic
/// operation. mt19937_64 output is fixed by the standard, and the helpers
/// below avoid the implementation-defined std distributions, so a seed
/// replays identically on every toolchain.
using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline int random_bit(Rng& rng) { return static_cast<int>(rng() >> 63); }

}  // namespace qtwsn
