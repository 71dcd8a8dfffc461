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

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qspa/errors.hpp"
#include "qspa/estimator.hpp"

namespace qspa {
namespace {

DensityMatrix singlet_state() { return DensityMatrix::pure(Ket(oracle::singlet()), {2, 2}); }

TEST(SwapTest, ProbabilityIdentity) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const DensityMatrix a = random_mixed_state({3}, s);
    const DensityMatrix b = random_mixed_state({3}, s + 1000);
    const double tr = (a.matrix() * b.matrix()).trace().real();
    EXPECT_NEAR(swap_test_probability(a, b), (1.0 + tr) / 2.0, 1e-15);
  }
  EXPECT_THROW(swap_test_probability(random_mixed_state({2}, 1), random_mixed_state({3}, 1)), DomainError);
}

TEST(Hoeffding, HalfWidth) {
  EXPECT_NEAR(hoeffding_half_width(10000, 0.01), std::sqrt(std::log(100.0) / 20000.0), 1e-15);
  EXPECT_NEAR(hoeffding_half_width(10000, 0.01), 0.0152, 1e-4);
  EXPECT_THROW(hoeffding_half_width(0, 0.1), DomainError);
  EXPECT_THROW(hoeffding_half_width(10, 0.0), DomainError);
  EXPECT_THROW(hoeffding_half_width(10, 1.0), DomainError);
}

TEST(SampleOverlap, DeterministicAndConsistent) {
  const DensityMatrix rho = random_mixed_state({2}, 3);
  const DensityMatrix sigma = random_mixed_state({2}, 4);
  const ShotResult a = sample_overlap(rho, sigma, 5000, 17);
  const ShotResult b = sample_overlap(rho, sigma, 5000, 17);
  EXPECT_EQ(a.zeros, b.zeros);
  EXPECT_EQ(a.estimate, 2.0 * static_cast<double>(a.zeros) / 5000.0 - 1.0);
  EXPECT_LE(a.lo, a.estimate);
  EXPECT_GE(a.hi, a.estimate);
  EXPECT_EQ(a.level, 0.95);
  EXPECT_THROW(sample_overlap(rho, sigma, 0, 1), DomainError);
  EXPECT_THROW(sample_overlap(rho, sigma, 10, 1, 1.5), DomainError);
}

TEST(SampleOverlap, IntervalCoverage) {
  const DensityMatrix rho = random_mixed_state({2, 2}, 5);
  const DensityMatrix sigma = random_mixed_state({2, 2}, 6);
  const double exact = (rho.matrix() * sigma.matrix()).trace().real();
  int covered = 0;
  int within_4se = 0;
  double mean = 0.0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const ShotResult r = sample_overlap(rho, sigma, 20000, s);
    covered += r.lo <= exact && exact <= r.hi;
    within_4se += std::abs(r.estimate - exact) < 4.0 * r.std_error;
    mean += r.estimate / 200.0;
  }
  EXPECT_GE(covered, 190);
  EXPECT_GE(within_4se, 195);
  EXPECT_NEAR(mean, exact, 2e-3);
}

TEST(DetectWithConfidence, Verdicts) {
  const ApproxWitness a = aew(transpose_witness(2));
  const ConfidenceResult singlet = detect_with_confidence(singlet_state(), a, 10000, 1, 0.99);
  EXPECT_EQ(singlet.verdict, ConfidenceVerdict::Detected);
  EXPECT_LT(singlet.upper_bound, a.threshold);
  EXPECT_NEAR(singlet.upper_bound - singlet.shots.estimate, 2.0 * hoeffding_half_width(10000, 0.01), 1e-15);

  // 1/4 against 1/6: far enough apart for 1e5 shots.
  const ConfidenceResult mixed =
      detect_with_confidence(DensityMatrix::maximally_mixed({2, 2}), a, 100000, 2, 0.99);
  EXPECT_EQ(mixed.verdict, ConfidenceVerdict::NotDetected);

  const ConfidenceResult few = detect_with_confidence(singlet_state(), a, 10, 3, 0.99);
  EXPECT_EQ(few.verdict, ConfidenceVerdict::Inconclusive);
  EXPECT_THROW(detect_with_confidence(singlet_state(), a, 10, 3, 0.0), DomainError);
}

TEST(SampleOverlap, ZeroOverlapConcentrates) {
  const DensityMatrix rho = DensityMatrix::pure(Ket::basis(2, 0), {2});
  const DensityMatrix sigma = DensityMatrix::pure(Ket::basis(2, 1), {2});
  EXPECT_EQ(swap_test_probability(rho, sigma), 0.5);
  int inside = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const ShotResult r = sample_overlap(rho, sigma, 100000, s);
    inside += std::abs(r.estimate) < 4.0 * std::sqrt(0.25 / 100000.0) * 2.0;
  }
  EXPECT_GE(inside, 95);
}

TEST(SampleOverlap, IdenticalPureStatesHaveNoSpread) {
  const DensityMatrix rho = DensityMatrix::pure(Ket::basis(3, 1), {3});
  EXPECT_EQ(swap_test_probability(rho, rho), 1.0);
  const ShotResult r = sample_overlap(rho, rho, 777, 9);
  EXPECT_EQ(r.zeros, 777u);
  EXPECT_EQ(r.estimate, 1.0);
  EXPECT_EQ(r.std_error, 0.0);
  EXPECT_NEAR(swap_test_probability(singlet_state(), aew(transpose_witness(2)).state), 0.5, 1e-12);
}

TEST(SampleOverlap, MillionShotsWithinFiveStandardErrors) {
  const DensityMatrix rho = random_mixed_state({2, 2}, 11);
  const DensityMatrix sigma = random_mixed_state({2, 2}, 12);
  const double exact = (rho.matrix() * sigma.matrix()).trace().real();
  int ok = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const ShotResult r = sample_overlap(rho, sigma, 1000000, s);
    const double p = static_cast<double>(r.zeros) / 1e6;
    EXPECT_DOUBLE_EQ(r.std_error, 2.0 * std::sqrt(p * (1.0 - p) / 1e6));
    ok += std::abs(r.estimate - exact) < 5.0 * r.std_error;
  }
  EXPECT_GE(ok, 99);
}

TEST(Hoeffding, WidthDecreasesWithShots) {
  double prev = hoeffding_half_width(1, 0.05);
  for (std::uint64_t n = 2; n < 5000; n *= 3) {
    const double w = hoeffding_half_width(n, 0.05);
    EXPECT_LT(w, prev);
    prev = w;
  }
}

TEST(DetectWithConfidence, BoundaryWernerIsInconclusive) {
  // p singlet + (1-p) 1/4 with p = 1/3 sits exactly on the threshold.
  const ApproxWitness a = aew(transpose_witness(2));
  const oracle::Vector s = oracle::singlet();
  const Matrix m = (s * s.adjoint()) / 3.0 + Matrix::Identity(4, 4) / 6.0;
  const DensityMatrix werner(Operator(Dims{2, 2}, m));
  EXPECT_NEAR(detect(werner, a).value, 1.0 / 6.0, 1e-12);
  int inconclusive = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    inconclusive += detect_with_confidence(werner, a, 10000, seed, 0.99).verdict == ConfidenceVerdict::Inconclusive;
  EXPECT_GE(inconclusive, 90);
  EXPECT_THROW(detect_with_confidence(werner, a, 10, 1, 1.5), DomainError);
}

}  // namespace
}  // namespace qspa
