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
#include <numbers>

#include "oracles.hpp"
#include "qspa/channels.hpp"
#include "qspa/designs.hpp"
#include "qspa/errors.hpp"
#include "qspa/optics.hpp"

namespace qspa::optics {
namespace {

const Pipeline& pipeline() {
  static const Pipeline p = build_fig2_pipeline(builtin_fiducial(2));
  return p;
}

TEST(Elements, HalfWavePlate) {
  OpticalElement hwp{ElementKind::HWP, {0}};
  hwp.angle = std::numbers::pi / 8.0;
  const Operator m = element_matrix(hwp);
  const double c = std::cos(std::numbers::pi / 4.0);
  EXPECT_NEAR(std::abs(m(0, 0) - c), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(0, 1) - c), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(1, 0) - c), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(1, 1) + c), 0.0, 1e-15);
}

TEST(Elements, AllButCouplerAreUnitary) {
  for (const auto& e : pipeline().stages) {
    if (e.kind == ElementKind::COUPLER) continue;
    const Matrix u = element_matrix(e).matrix();
    EXPECT_LT((u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm(), 1e-12) << to_string(e.kind);
  }
}

TEST(Pipeline, StageOrder) {
  const Pipeline& p = pipeline();
  EXPECT_EQ(stage_index(p, ElementKind::PPBS), 0u);
  EXPECT_LT(stage_index(p, ElementKind::PPBS), stage_index(p, ElementKind::HWP));
  EXPECT_LT(stage_index(p, ElementKind::HWP), stage_index(p, ElementKind::PBS));
  EXPECT_LT(stage_index(p, ElementKind::PBS), stage_index(p, ElementKind::JONES));
  EXPECT_LT(stage_index(p, ElementKind::JONES), stage_index(p, ElementKind::PS));
  EXPECT_EQ(stage_index(p, ElementKind::COUPLER), p.stages.size() - 1);
}

TEST(Pipeline, PathProbabilitiesAreSicStatistics) {
  const Design sic = sic_from_fiducial(builtin_fiducial(2));
  for (std::uint64_t s = 0; s < 20; ++s) {
    const DensityMatrix rho = random_mixed_state({2}, s);
    const auto probs = path_probabilities(pipeline(), rho);
    ASSERT_EQ(probs.size(), 4u);
    double total = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      const oracle::Vector v = sic.vectors[i].amplitudes();
      const double want = (v.adjoint() * rho.matrix() * v)(0, 0).real() / 2.0;
      EXPECT_NEAR(probs[i], want, 1e-12);
      total += probs[i];
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(Pipeline, ConditionalStatesAreOrbitStates) {
  const Design sic = sic_from_fiducial(builtin_fiducial(2));
  const auto states = conditional_states_before_ps(pipeline(), DensityMatrix::maximally_mixed({2}));
  for (std::size_t i = 0; i < 4; ++i) {
    ASSERT_TRUE(states[i].has_value());
    EXPECT_LT(phase_free_distance(*states[i], sic.vectors[i]), 1e-10);
  }
}

TEST(Pipeline, OutputIsApproxTranspose) {
  EXPECT_LT(cj_distance(output_channel(pipeline()), approx_transpose(2)), 1e-10);
  const DensityMatrix rho = random_mixed_state({2}, 77);
  EXPECT_LT((output_state(pipeline(), rho.op()).matrix() - oracle::approx_transpose(rho.matrix())).norm(),
            1e-12);
}

TEST(Pipeline, PhaseShifterSettings) {
  const Pipeline& p = pipeline();
  ASSERT_EQ(p.phases.size(), 4u);
  for (const auto& ph : p.phases) EXPECT_NEAR(std::abs(ph.solved_phase), std::numbers::pi / 2.0, 1e-12);
  EXPECT_NEAR(p.printed_phase, -std::numbers::pi / 4.0, 1e-15);
  EXPECT_TRUE(p.symmetric_split_matches_printed);
}

TEST(Pipeline, RequiresQubitFiducial) {
  EXPECT_THROW(build_fig2_pipeline(builtin_fiducial(3)), DomainError);
}

TEST(Pipeline, InjectPlacesPhotonInFirstPath) {
  const Operator m = inject(Operator::projector(Ket::basis(2, 1)));
  EXPECT_EQ(m.dims(), (Dims{4, 2}));
  EXPECT_NEAR(m(1, 1).real(), 1.0, 1e-15);
  EXPECT_NEAR(m.trace().real(), 1.0, 1e-15);
}

}  // namespace
}  // namespace qspa::optics
