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
#include "qspa/designs.hpp"
#include "qspa/errors.hpp"

namespace qspa {
namespace {

double max_overlap_deviation(const Design& g, double target) {
  double worst = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j)
    for (std::size_t k = j + 1; k < g.size(); ++k)
      worst = std::max(worst, std::abs(std::norm(g.vectors[j].inner(g.vectors[k])) - target));
  return worst;
}

// (1/N) sum |x><x| (x) |x><x| computed from raw amplitudes.
oracle::Matrix second_moment(const Design& g) {
  const auto n = static_cast<Eigen::Index>(g.d * g.d);
  oracle::Matrix m = oracle::Matrix::Zero(n, n);
  for (const auto& v : g.vectors) {
    oracle::Vector vv(n);
    for (std::size_t i = 0; i < g.d; ++i)
      for (std::size_t j = 0; j < g.d; ++j) vv(static_cast<Eigen::Index>(i * g.d + j)) = v[i] * v[j];
    m += vv * vv.adjoint();
  }
  return m / static_cast<double>(g.size());
}

TEST(Weyl, CommutationAndCyclicity) {
  for (std::size_t d : {2u, 3u, 5u}) {
    const WeylPair w = weyl_pair(d);
    EXPECT_LT((w.displacement(static_cast<long>(d), 0) - Operator::identity({d})).frobenius_norm(), 1e-12);
    EXPECT_LT((w.displacement(0, static_cast<long>(d)) - Operator::identity({d})).frobenius_norm(), 1e-12);
    // Z X = omega X Z
    EXPECT_LT((w.z * w.x - w.omega * (w.x * w.z)).frobenius_norm(), 1e-12);
    EXPECT_LT((w.displacement(-1, 0) * w.x - Operator::identity({d})).frobenius_norm(), 1e-12);
    EXPECT_EQ(w.x.apply(Ket::basis(d, d - 1)).amplitudes(), Ket::basis(d, 0).amplitudes());
  }
}

TEST(Sic, BuiltinFiducialsAreEquiangular) {
  for (std::size_t d : {2u, 3u}) {
    const Design g = sic_from_fiducial(builtin_fiducial(d));
    EXPECT_EQ(g.size(), d * d);
    EXPECT_EQ(g.kind, DesignKind::SIC);
    EXPECT_LT(max_overlap_deviation(g, 1.0 / static_cast<double>(d + 1)), 1e-12);
    EXPECT_TRUE(g.is_two_design());
    EXPECT_TRUE(g.is_coherent());
    const double dd = static_cast<double>(d);
    const oracle::Matrix target =
        (oracle::Matrix::Identity(static_cast<Eigen::Index>(d * d), static_cast<Eigen::Index>(d * d)) +
         oracle::swap(d)) / (dd * (dd + 1.0));
    EXPECT_LT((second_moment(g) - target).norm(), 1e-12);
    EXPECT_NEAR(frame_potential(g), 2.0 * dd * dd * dd / (dd + 1.0), 1e-10);
  }
}

TEST(Sic, QubitFiducialAmplitudes) {
  const Fiducial f = builtin_fiducial(2);
  const double s3 = std::sqrt(3.0);
  EXPECT_NEAR(std::abs(f.alpha(0) - std::sqrt(3.0 + s3) / std::sqrt(6.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(f.alpha(1) - std::polar(std::sqrt(3.0 - s3) / std::sqrt(6.0), M_PI / 4.0)), 0.0,
              1e-15);
}

TEST(Sic, ErrorPaths) {
  EXPECT_THROW(builtin_fiducial(4), DomainError);
  EXPECT_THROW(sic_from_fiducial(Fiducial(Ket::basis(3, 0))), NotSICError);
  EXPECT_THROW(Fiducial(Ket{1.0, 1.0}), DomainError);
}

TEST(Mub, PrimeDimensions) {
  for (std::size_t d : {2u, 3u, 5u, 7u}) {
    const Design g = mub_prime(d);
    ASSERT_EQ(g.size(), d * (d + 1));
    for (std::size_t a = 0; a <= d; ++a)
      for (std::size_t b = a; b <= d; ++b)
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j) {
            if (a == b && i == j) continue;
            const double o = std::norm(g.vectors[a * d + i].inner(g.vectors[b * d + j]));
            EXPECT_NEAR(o, a == b ? 0.0 : 1.0 / static_cast<double>(d), 1e-12);
          }
    EXPECT_TRUE(g.is_two_design()) << "d = " << d;
    EXPECT_TRUE(g.is_coherent()) << "d = " << d;
  }
}

TEST(Mub, CompositeDimensionRejected) {
  EXPECT_THROW(mub_prime(4), NotPrimeError);
  EXPECT_THROW(mub_prime(6), NotPrimeError);
  EXPECT_THROW(mub_prime(1), DomainError);
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(13));
  EXPECT_FALSE(is_prime(15));
}

TEST(Design, ComputationalBasisIsNotATwoDesign) {
  const Design g = make_design({Ket::basis(3, 0), Ket::basis(3, 1), Ket::basis(3, 2)}, DesignKind::Custom);
  EXPECT_FALSE(g.is_two_design());
  EXPECT_TRUE(g.is_coherent());
  // Only the diagonal terms survive: FP = 3 against the bound 2*9/12.
  EXPECT_NEAR(frame_potential(g), 3.0, 1e-12);
  EXPECT_NEAR(two_design_frame_potential(3, 3), 1.5, 1e-15);
}

TEST(Design, ConjugatePreservesTwoDesign) {
  const Design g = conjugate(sic_from_fiducial(builtin_fiducial(2)));
  EXPECT_TRUE(g.is_two_design());
  EXPECT_NEAR(std::abs(g.vectors[0][1] - std::conj(builtin_fiducial(2).alpha(1))), 0.0, 1e-15);
}

TEST(Design, RejectsNonUnitVectors) {
  EXPECT_THROW(make_design({Ket{1.0, 1.0}}, DesignKind::Custom), DomainError);
}

class FiducialSearchTest : public ::testing::TestWithParam<std::size_t> {};

TEST_P(FiducialSearchTest, FindsCertifiedFiducial) {
  const std::size_t d = GetParam();
  const FiducialSearchResult r = fiducial_search(d, 1234, 2000);
  const Design g = sic_from_fiducial(r.fiducial);
  EXPECT_LT(max_overlap_deviation(g, 1.0 / static_cast<double>(d + 1)), 1e-10);
  EXPECT_LT(r.frame_potential_residual, 1e-10);
  EXPECT_TRUE(g.is_two_design());
  const double dd = static_cast<double>(d);
  EXPECT_NEAR(frame_potential(g), 2.0 * dd * dd * dd / (dd + 1.0), 1e-8);
}

INSTANTIATE_TEST_SUITE_P(Dims, FiducialSearchTest, ::testing::Values(2u, 3u, 4u, 5u));

TEST(FiducialSearch, DeterministicForSeed) {
  const auto a = fiducial_search(4, 99, 2000);
  const auto b = fiducial_search(4, 99, 2000);
  EXPECT_EQ(a.fiducial.ket().amplitudes(), b.fiducial.ket().amplitudes());
  EXPECT_EQ(a.restarts, b.restarts);
}

TEST(FiducialSearch, KnownStartNeedsNoIterations) {
  const auto r = fiducial_search(3, 1, 100, builtin_fiducial(3).ket());
  EXPECT_EQ(r.iterations, 0u);
  EXPECT_EQ(r.restarts, 1u);
}

TEST(FiducialSearch, ErrorPaths) {
  EXPECT_THROW(fiducial_search(1, 1, 10), DomainError);
  EXPECT_THROW(fiducial_search(3, 1, 10, Ket::basis(2, 0)), DomainError);
  EXPECT_THROW(fiducial_search(5, 1, 1, std::nullopt, 0), SearchFailed);
  EXPECT_THROW(fiducial_search(3, 1, 0, Ket::basis(3, 0), 0), SearchFailed);
}

}  // namespace
}  // namespace qspa
