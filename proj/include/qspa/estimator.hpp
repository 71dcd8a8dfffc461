// Copyright 2026 The qspa Authors
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

// Swap-test estimation of tr{rho sigma}: the ancilla reads 0 with probability
// (1 + tr{rho sigma})/2. The outcome distribution is sampled directly rather
// than simulated gate by gate.

#pragma once

#include <cstdint>
#include <string_view>

#include "qspa/linalg.hpp"
#include "qspa/witness.hpp"

namespace qspa {

struct ShotResult {
  std::uint64_t shots;
  std::uint64_t zeros;
  /// 2 zeros/shots - 1
  double estimate;
  /// 2 sqrt(p(1-p)/shots) with p = zeros/shots
  double std_error;
  /// Two-sided Hoeffding interval on tr{rho sigma} at `level`.
  double level;
  double lo;
  double hi;
};

/// (1 + tr{rho sigma})/2. DomainError on dimension mismatch.
double swap_test_probability(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Half-width on the ancilla probability with failure probability `alpha`
/// for a one-sided bound: sqrt(ln(1/alpha) / (2 shots)).
double hoeffding_half_width(std::uint64_t shots, double alpha);

/// Draws zeros ~ Binomial(shots, p0) from a generator seeded with `seed`.
/// DomainError if shots == 0 or level is outside (0, 1).
ShotResult sample_overlap(const DensityMatrix& rho, const DensityMatrix& sigma,
                          std::uint64_t shots, std::uint64_t seed, double level = 0.95);

enum class ConfidenceVerdict { Detected, NotDetected, Inconclusive };
std::string_view to_string(ConfidenceVerdict v);

struct ConfidenceResult {
  ConfidenceVerdict verdict;
  ShotResult shots;
  double threshold;
  /// One-sided Hoeffding bounds on tr{rho rho_W} at the requested level.
  double lower_bound;
  double upper_bound;
};

/// Detected iff the upper bound is below the witness threshold, not detected
/// iff the lower bound is above it, inconclusive otherwise.
ConfidenceResult detect_with_confidence(const DensityMatrix& rho, const ApproxWitness& a,
                                        std::uint64_t shots, std::uint64_t seed, double level);

}  // namespace qspa
