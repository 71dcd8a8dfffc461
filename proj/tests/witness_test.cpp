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

#include "oracles.hpp"
#include "qspa/designs.hpp"
#include "qspa/errors.hpp"
#include "qspa/witness.hpp"

namespace qspa {
namespace {

DensityMatrix singlet_state() { return DensityMatrix::pure(Ket(oracle::singlet()), {2, 2}); }

// (1/(d+1)) PT_cut(G) + (d/(d+1)) tr_cut(G) (x) 1/d, factor order restored.
oracle::Matrix ghz_oracle(std::size_t n, std::size_t d, std::size_t cut) {
  const oracle::Vector g = oracle::ghz(n, d);
  const oracle::Matrix gg = g * g.adjoint();
  std::vector<std::size_t> dims(n, d);
  const oracle::Matrix pt = oracle::partial_transpose(gg, dims, {cut});
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (i != cut) rest.push_back(i);
  const oracle::Matrix reduced = oracle::partial_trace(gg, dims, rest);
  oracle::Matrix out = pt / static_cast<double>(d + 1);
  const std::size_t total = oracle::product(dims);
  for (std::size_t r = 0; r < total; ++r)
    for (std::size_t c = 0; c < total; ++c) {
      auto dr = oracle::digits(r, dims);
      auto dc = oracle::digits(c, dims);
      if (dr[cut] != dc[cut]) continue;
      std::vector<std::size_t> rr, cc;
      for (auto f : rest) {
        rr.push_back(dr[f]);
        cc.push_back(dc[f]);
      }
      std::vector<std::size_t> rest_dims(rest.size(), d);
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) +=
          reduced(static_cast<Eigen::Index>(oracle::flatten(rr, rest_dims)),
                  static_cast<Eigen::Index>(oracle::flatten(cc, rest_dims))) /
          static_cast<double>(d + 1);
    }
  return out;
}

TEST(TransposeWitness, ValuesOnReferenceStates) {
  const Witness w = transpose_witness(2);
  EXPECT_NEAR(trace_product(w.op(), singlet_state().op()).real(), -0.5, 1e-12);
  EXPECT_NEAR(spa_pmin(w), 2.0 / 3.0, 1e-12);
  const ApproxWitness a = aew(w);
  EXPECT_NEAR(a.threshold, 1.0 / 6.0, 1e-12);
  const oracle::Matrix want = (oracle::Matrix::Identity(4, 4) + oracle::swap(2)) / 6.0;
  EXPECT_LT((a.state.matrix() - want).norm(), 1e-12);

  const CutEntry s = detect(singlet_state(), a);
  EXPECT_NEAR(s.value, 0.0, 1e-12);
  EXPECT_EQ(s.verdict, Verdict::Detected);
  const CutEntry mixed = detect(DensityMatrix::maximally_mixed({2, 2}), a);
  EXPECT_NEAR(mixed.value, 0.25, 1e-12);
  EXPECT_EQ(mixed.verdict, Verdict::NotDetected);
  const CutEntry prod = detect(DensityMatrix::pure(Ket::basis(4, 0), {2, 2}), a);
  EXPECT_NEAR(prod.value, 1.0 / 3.0, 1e-12);
  EXPECT_EQ(prod.verdict, Verdict::NotDetected);
}

TEST(TransposeWitness, PminAcrossDimensions) {
  for (std::size_t d = 2; d <= 5; ++d) {
    const double dd = static_cast<double>(d);
    const Witness w = transpose_witness(d);
    EXPECT_NEAR(spa_pmin(w), dd / (dd + 1.0), 1e-12);
    EXPECT_NEAR(aew(w).threshold, 1.0 / (dd * (dd + 1.0)), 1e-12);
  }
}

TEST(TransposeWitness, DetectionEquivalence) {
  const Witness w = transpose_witness(2);
  const ApproxWitness a = aew(w);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const DensityMatrix rho = random_mixed_state({2, 2}, s);
    const double wv = trace_product(w.op(), rho.op()).real();
    const CutEntry e = detect(rho, a);
    if (std::abs(wv) < 1e-8) continue;
    EXPECT_EQ(wv < 0.0, e.verdict == Verdict::Detected) << s;
  }
}

TEST(Classify, BoundaryBand) {
  EXPECT_EQ(classify(0.1, 0.1), Verdict::Boundary);
  EXPECT_EQ(classify(0.1 + 5e-10, 0.1), Verdict::Boundary);
  EXPECT_EQ(classify(0.1 - 2e-9, 0.1), Verdict::Detected);
  EXPECT_EQ(classify(0.1 + 2e-9, 0.1), Verdict::NotDetected);
}

TEST(Decomposition, ReconstructsAndMatchesDirectValue) {
  for (const Design& g : {sic_from_fiducial(builtin_fiducial(2)), mub_prime(2), mub_prime(3)}) {
    const SeparableDecomposition dec = separable_decomposition_of_transpose_aew(g);
    EXPECT_EQ(dec.size(), g.size());
    for (double q : dec.weights) EXPECT_NEAR(q, 1.0 / static_cast<double>(g.size()), 1e-15);
    const ApproxWitness a = aew(transpose_witness(g.d));
    EXPECT_LT(frobenius_distance(dec.reconstruct(), a.state.op()), 1e-12);
    for (std::uint64_t s = 0; s < 10; ++s) {
      const DensityMatrix rho = random_mixed_state({g.d, g.d}, s);
      EXPECT_NEAR(locc_expectation(rho, dec), detect(rho, a).value, 1e-12);
    }
  }
  const auto dec = separable_decomposition_of_transpose_aew(sic_from_fiducial(builtin_fiducial(2)));
  EXPECT_NEAR(locc_expectation(singlet_state(), dec), 0.0, 1e-12);
  EXPECT_THROW(separable_decomposition_of_transpose_aew(
                   make_design({Ket::basis(2, 0), Ket::basis(2, 1)}, DesignKind::Custom)),
               DomainError);
}

TEST(Multipartite, OracleMatchesBruteForce) {
  for (std::size_t n : {2u, 3u})
    for (std::size_t d : {2u, 3u})
      for (std::size_t cut = 0; cut < n; ++cut)
        EXPECT_LT((multipartite_oracle(n, d, cut).matrix() - ghz_oracle(n, d, cut)).norm(), 1e-12)
            << n << " " << d << " " << cut;
  // Two parties: the CJ state of the approximate transpose.
  const oracle::Matrix cj = (oracle::Matrix::Identity(9, 9) + oracle::swap(3)) / 12.0;
  EXPECT_LT((multipartite_oracle(2, 3, 0).matrix() - cj).norm(), 1e-12);
  EXPECT_THROW(multipartite_oracle(3, 2, 3), DomainError);
}

TEST(Multipartite, ConjugatedClosedFormMatchesOracle) {
  const Design sic = sic_from_fiducial(builtin_fiducial(2));
  const MultipartiteWitness w = multipartite_aew(3, 2, 0, &sic);
  ASSERT_TRUE(w.closed_form_conjugate_residual.has_value());
  EXPECT_LT(*w.closed_form_conjugate_residual, 1e-10);
  EXPECT_NEAR(w.aew.threshold, 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(w.aew.p_min, 2.0 / 3.0, 1e-15);
  const Design sic3 = sic_from_fiducial(builtin_fiducial(3));
  EXPECT_THROW(multipartite_aew(3, 2, 0, &sic3), DomainError);
}

TEST(Tripartite, WorkedExample) {
  const TripartiteEvaluation ev = evaluate_tripartite_example();
  ASSERT_EQ(ev.report.cuts.size(), 3u);
  EXPECT_EQ(ev.report.cuts[0].cut, "A|BC");
  EXPECT_NEAR(ev.report.cuts[0].value, 1.0 / 9.0, 1e-10);
  EXPECT_EQ(ev.report.cuts[0].verdict, Verdict::Detected);
  for (std::size_t i : {1u, 2u}) {
    EXPECT_NEAR(ev.report.cuts[i].value, 1.0 / 6.0, 1e-10);
    EXPECT_EQ(ev.report.cuts[i].verdict, Verdict::Boundary);
  }
  EXPECT_NEAR(ev.printed_abc_value, 1.0 / 18.0, 1e-15);
  EXPECT_NEAR(ev.abc_closed_form_conjugate_value, ev.abc_value, 1e-10);
  EXPECT_FALSE(ev.report.caveats.empty());

  // Independent evaluation: tr(rho * oracle) with the state built by hand.
  oracle::Matrix rho = oracle::ghz(3, 2) * oracle::ghz(3, 2).adjoint() / 3.0;
  for (int idx : {1, 2, 5, 6}) rho(idx, idx) += 1.0 / 6.0;
  EXPECT_LT((tripartite_example_state().matrix() - rho).norm(), 1e-15);
  EXPECT_NEAR((rho * ghz_oracle(3, 2, 0)).trace().real(), 1.0 / 9.0, 1e-12);
}

TEST(Ppt, Oracle) {
  EXPECT_EQ(ppt_check(singlet_state(), {0}).verdict, PptVerdict::NPT);
  EXPECT_EQ(ppt_check(DensityMatrix::maximally_mixed({2, 2}), {0}).verdict, PptVerdict::PPT);
  EXPECT_THROW(ppt_check(singlet_state(), {2}), DomainError);
}

TEST(Cuts, Grammar) {
  const CutSpec c = parse_cut("A|BC", 3);
  EXPECT_EQ(c.left, (std::vector<std::size_t>{0}));
  EXPECT_EQ(c.right, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(parse_cut("B|CA", 3).right, (std::vector<std::size_t>{2, 0}));
  EXPECT_THROW(parse_cut("A|C", 2), DomainError);
  EXPECT_THROW(parse_cut("A|", 2), DomainError);
  EXPECT_THROW(parse_cut("A|A", 2), DomainError);
  EXPECT_THROW(parse_cut("AB", 2), DomainError);
  EXPECT_THROW(parse_cut("A|B", 3), DomainError);
  EXPECT_THROW(parse_cut("a|B", 2), DomainError);
}

TEST(Cuts, ProductStateFlaggedWhenThresholdFires) {
  const DensityMatrix rho = DensityMatrix::pure(Ket::basis(8, 0b010), {2, 2, 2});
  const DetectionReport rep = detect_across_cuts(rho, {parse_cut("A|BC", 3)});
  ASSERT_EQ(rep.cuts.size(), 1u);
  EXPECT_NEAR(rep.cuts[0].value, 0.0, 1e-12);
  EXPECT_EQ(rep.cuts[0].verdict, Verdict::Detected);
  ASSERT_TRUE(rep.cuts[0].ppt.has_value());
  EXPECT_EQ(rep.cuts[0].ppt->verdict, PptVerdict::PPT);
  EXPECT_EQ(rep.caveats.size(), 1u);
}

TEST(Cuts, SingletAcrossBipartition) {
  const DetectionReport rep = detect_across_cuts(singlet_state(), {parse_cut("A|B", 2)});
  EXPECT_NEAR(rep.cuts[0].value, 0.0, 1e-12);
  EXPECT_NEAR(rep.cuts[0].threshold, 1.0 / 6.0, 1e-12);
  EXPECT_EQ(rep.cuts[0].verdict, Verdict::Detected);
  EXPECT_TRUE(rep.caveats.empty());
}

}  // namespace
}  // namespace qspa
