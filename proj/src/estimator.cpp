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

#include "qspa/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qspa/errors.hpp"

namespace qspa {

namespace {

void check_level(double level) {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("confidence level must lie in (0, 1)");
}

}  // namespace

double swap_test_probability(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DomainError("swap test: dimension mismatch");
  return 0.5 * (1.0 + trace_product(rho.op(), sigma.op()).real());
}

double hoeffding_half_width(std::uint64_t shots, double alpha) {
  if (shots == 0) throw DomainError("shots must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  return std::sqrt(std::log(1.0 / alpha) / (2.0 * static_cast<double>(shots)));
}

ShotResult sample_overlap(const DensityMatrix& rho, const DensityMatrix& sigma,
                          std::uint64_t shots, std::uint64_t seed, double level) {
  if (shots == 0) throw DomainError("shots must be positive");
  check_level(level);
  const double p0 = std::clamp(swap_test_probability(rho, sigma), 0.0, 1.0);
  std::mt19937_64 gen(seed);
  std::binomial_distribution<std::uint64_t> binom(shots, p0);
  const std::uint64_t zeros = binom(gen);

  const double n = static_cast<double>(shots);
  const double p_hat = static_cast<double>(zeros) / n;
  const double estimate = 2.0 * p_hat - 1.0;
  const double half = 2.0 * hoeffding_half_width(shots, (1.0 - level) / 2.0);
  return {shots,
          zeros,
          estimate,
          2.0 * std::sqrt(p_hat * (1.0 - p_hat) / n),
          level,
          std::max(-1.0, estimate - half),
          std::min(1.0, estimate + half)};
}

std::string_view to_string(ConfidenceVerdict v) {
  switch (v) {
    case ConfidenceVerdict::Detected: return "detected";
    case ConfidenceVerdict::NotDetected: return "not-detected";
    case ConfidenceVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

ConfidenceResult detect_with_confidence(const DensityMatrix& rho, const ApproxWitness& a,
                                        std::uint64_t shots, std::uint64_t seed, double level) {
  check_level(level);
  const ShotResult r = sample_overlap(rho, a.state, shots, seed, level);
  const double half = 2.0 * hoeffding_half_width(shots, 1.0 - level);
  const double lower = r.estimate - half;
  const double upper = r.estimate + half;
  ConfidenceVerdict v = ConfidenceVerdict::Inconclusive;
  if (upper < a.threshold) v = ConfidenceVerdict::Detected;
  else if (lower > a.threshold) v = ConfidenceVerdict::NotDetected;
  return {v, r, a.threshold, lower, upper};
}

}  // namespace qspa
