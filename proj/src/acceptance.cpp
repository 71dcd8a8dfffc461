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

#include "qspa/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "qspa/channels.hpp"
#include "qspa/designs.hpp"
#include "qspa/errors.hpp"
#include "qspa/estimator.hpp"
#include "qspa/linalg.hpp"
#include "qspa/optics.hpp"
#include "qspa/sic_measurement.hpp"
#include "qspa/witness.hpp"

namespace qspa::acceptance {

namespace {

std::string sci(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << x;
  return os.str();
}

std::string fixed(double x, int digits = 12) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

Operator sym_cj(std::size_t d) {
  const double dd = static_cast<double>(d);
  return (Operator::identity({d, d}) + swap_operator(d)) * Complex(1.0 / (dd * (dd + 1.0)), 0.0);
}

Ket singlet() {
  const double h = 1.0 / std::sqrt(2.0);
  return Ket{0.0, h, -h, 0.0};
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t i) {
  // splitmix64 step
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<std::size_t> dims_upto(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> out;
  for (std::size_t d = lo; d <= hi; ++d) out.push_back(d);
  return out;
}

CriterionResult c01(const Options& o) {
  double worst = 0.0;
  for (std::size_t d : dims_upto(2, std::max<std::size_t>(o.max_dim, 2)))
    worst = std::max(worst, frobenius_distance(cj_state(approx_transpose(d)).op(), sym_cj(d)));
  return {1, "CJ state of the approximate transpose equals (1+V)/(d(d+1))", worst < 1e-10,
          "max Frobenius residual " + sci(worst) + " over d=2.." + std::to_string(o.max_dim) +
              " (tol 1e-10)"};
}

CriterionResult c02(const Options& o) {
  double worst = 0.0;
  std::ostringstream os;
  auto check = [&](const Design& g, const char* name) {
    const double dist = cj_distance(measure_prepare_from_design(g).channel, approx_transpose(g.d));
    worst = std::max(worst, dist);
    os << name << " d=" << g.d << ": " << sci(dist) << "; ";
  };
  for (std::size_t d : {2u, 3u}) check(sic_from_fiducial(builtin_fiducial(d)), "SIC");
  for (std::size_t d : {2u, 3u, 5u})
    if (d <= std::max<std::size_t>(o.max_dim, 5)) check(mub_prime(d), "MUB");
  os << "(tol 1e-10)";
  return {2, "Measure-prepare channels from SIC and MUB designs equal the approximate transpose",
          worst < 1e-10, os.str()};
}

CriterionResult c03(const Options& o) {
  double worst_qubit = 0.0;
  double worst_general = 0.0;
  const Channel t2 = approx_transpose(2);
  for (std::uint64_t i = 0; i < 100; ++i)
    worst_qubit = std::max(worst_qubit, std::abs(pointwise_transpose_fidelity(
                                            t2, haar_random_ket(2, mix(o.seed, i))) - 2.0 / 3.0));
  for (std::size_t d : dims_upto(3, std::max<std::size_t>(o.max_dim, 3))) {
    const Channel t = approx_transpose(d);
    for (std::uint64_t i = 0; i < 100; ++i)
      worst_general = std::max(
          worst_general,
          std::abs(pointwise_transpose_fidelity(t, haar_random_ket(d, mix(o.seed + d, i))) -
                   2.0 / (static_cast<double>(d) + 1.0)));
  }
  const double worst = std::max(worst_qubit, worst_general);
  return {3, "Pointwise transpose fidelity is 2/3 for qubits and 2/(d+1) in general",
          worst < 1e-12,
          "qubit max |F - 2/3| " + sci(worst_qubit) + " over 100 Haar states; d=3.." +
              std::to_string(o.max_dim) + " max |F - 2/(d+1)| " + sci(worst_general) +
              " (tol 1e-12)"};
}

CriterionResult c04(const Options&) {
  double worst_dec = 0.0;
  double worst_sum = 0.0;
  std::ostringstream os;
  for (std::size_t d : {2u, 3u}) {
    const TwoStepMeasurement t = build_two_step(builtin_fiducial(d));
    const Design sic = sic_from_fiducial(builtin_fiducial(d));
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l) {
        const Operator& a = t.effective_kraus[k];
        const Operator m = Operator::projector(sic.vectors[k * d + l]) *
                           Complex(1.0 / static_cast<double>(d), 0.0);
        worst_dec = std::max(worst_dec,
                             frobenius_distance(m, a.adjoint() * t.second_effects[l] * a));
      }
    worst_sum = std::max(worst_sum, t.completeness_residual());
    os << "d=" << d << " convention: " << t.convention.describe() << " (raw residual "
       << sci(t.residual_table.front().max_residual) << "); ";
  }
  os << "max ||M_kl - A_k^+ B_l A_k|| " << sci(worst_dec) << ", ||sum M - 1|| " << sci(worst_sum)
     << " (tol 1e-10)";
  return {4, "Two-step measurement reproduces the HW SIC effects", worst_dec < 1e-10 &&
                                                                        worst_sum < 1e-10,
          os.str()};
}

CriterionResult c05(const Options&) {
  double worst_conj = 0.0;
  double worst_channel = 0.0;
  for (std::size_t d : {2u, 3u}) {
    const Fiducial f = builtin_fiducial(d);
    worst_conj = std::max(worst_conj, correction_set(f).max_conjugation_distance);
    worst_channel = std::max(worst_channel, cj_distance(circuit_channel(f), approx_transpose(d)));
  }
  return {5, "Correction unitaries prepare the conjugate SIC states; circuit = approximate transpose",
          worst_conj < 1e-10 && worst_channel < 1e-10,
          "max phase-free distance " + sci(worst_conj) + ", circuit CJ distance " +
              sci(worst_channel) + " for d=2,3 (tol 1e-10)"};
}

CriterionResult c06(const Options& o) {
  const Fiducial f = builtin_fiducial(2);
  const optics::Pipeline p = optics::build_fig2_pipeline(f);
  const double dist = cj_distance(optics::output_channel(p), approx_transpose(2));
  const Design sic = sic_from_fiducial(f);
  double worst_prob = 0.0;
  for (std::uint64_t i = 0; i <= 100; ++i) {
    const DensityMatrix rho = i == 100 ? DensityMatrix::pure(Ket::basis(2, 0))
                                       : random_mixed_state({2}, mix(o.seed + 6, i));
    const auto probs = optics::path_probabilities(p, rho);
    for (std::size_t path = 0; path < 4; ++path) {
      const double expected = 0.5 * rho.op().expectation(sic.vectors[path]).real();
      worst_prob = std::max(worst_prob, std::abs(probs[path] - expected));
    }
  }
  std::ostringstream os;
  os << "CJ distance " << sci(dist) << " (tol 1e-10); max path-probability error "
     << sci(worst_prob) << " (tol 1e-12); solved PS phases [";
  for (std::size_t i = 0; i < p.phases.size(); ++i)
    os << (i ? ", " : "") << fixed(p.phases[i].solved_phase / std::numbers::pi, 4) << "pi";
  os << "] vs printed " << fixed(p.printed_phase / std::numbers::pi, 4) << "pi"
     << (p.symmetric_split_matches_printed
             ? " (relative phase -+pi/2 = printed shift applied with opposite signs to V and H)"
             : " (printed value not reproduced)");
  return {6, "Linear-optics pipeline implements the approximate transpose",
          dist < 1e-10 && worst_prob < 1e-12, os.str()};
}

CriterionResult c07(const Options& o) {
  double worst = 0.0;
  bool certificates = true;
  for (std::size_t d : dims_upto(2, std::max<std::size_t>(o.max_dim, 2))) {
    const Witness w = transpose_witness(d);
    const double p = spa_pmin(w);
    const double dd = static_cast<double>(d);
    worst = std::max(worst, std::abs(p - dd / (dd + 1.0)));
    const auto mixed = [&](double q) {
      return w.op() * Complex(1.0 - q, 0.0) +
             Operator::identity(w.dims()) * Complex(q / static_cast<double>(w.dim()), 0.0);
    };
    certificates = certificates && is_psd(mixed(p)) && !is_psd(mixed(p * (1.0 - 1e-6)));
  }
  return {7, "p_min of the transpose witness is d/(d+1) with PSD certificate",
          worst < 1e-12 && certificates,
          "max |p_min - d/(d+1)| " + sci(worst) + " for d=2.." + std::to_string(o.max_dim) +
              " (tol 1e-12); PSD at p_min and not at p_min(1-1e-6): " +
              (certificates ? "yes" : "no")};
}

CriterionResult c08(const Options&) {
  const TripartiteEvaluation ev = evaluate_tripartite_example();
  const auto& cuts = ev.report.cuts;
  const double a = cuts[0].value;
  const double b = cuts[1].value;
  const double c = cuts[2].value;
  const bool recorded = std::any_of(ev.report.caveats.begin(), ev.report.caveats.end(),
                                    [](const std::string& s) { return s.find("1/18") != std::string::npos; });
  const bool ok = std::abs(b - 1.0 / 6.0) < 1e-10 && std::abs(c - 1.0 / 6.0) < 1e-10 &&
                  a < 1.0 / 6.0 && cuts[0].verdict == Verdict::Detected &&
                  std::abs(a - 1.0 / 9.0) < 1e-10 && recorded;
  return {8, "Tripartite example: A|BC detected, B|CA and C|AB on the threshold", ok,
          "A|BC " + fixed(a) + " (" + std::string(to_string(cuts[0].verdict)) +
              ", expected 1/9, printed 1/18, deviation recorded: " + (recorded ? "yes" : "no") +
              "), B|CA " + fixed(b) + ", C|AB " + fixed(c) + " (expected 1/6, tol 1e-10)"};
}

CriterionResult c09(const Options& o) {
  const ApproxWitness w = aew(transpose_witness(2));
  std::size_t violations = 0;
  std::size_t detected = 0;
  std::size_t npt = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const DensityMatrix rho = random_mixed_state({2, 2}, mix(o.seed + 9, i));
    const bool fired = detect(rho, w).verdict == Verdict::Detected;
    const bool is_npt = ppt_check(rho, {0}).verdict == PptVerdict::NPT;
    detected += fired;
    npt += is_npt;
    if (fired && !is_npt) ++violations;
  }
  const bool singlet_ok = detect(DensityMatrix::pure(singlet(), {2, 2}), w).verdict == Verdict::Detected;
  const bool product_ok =
      detect(DensityMatrix::pure(Ket::basis(4, 0), {2, 2}), w).verdict == Verdict::NotDetected;
  return {9, "Bipartite soundness against the PPT oracle",
          violations == 0 && singlet_ok && product_ok,
          std::to_string(violations) + " violations over 1000 random states (" +
              std::to_string(detected) + " detected, " + std::to_string(npt) +
              " NPT); singlet detected: " + (singlet_ok ? "yes" : "no") +
              "; |00> not detected: " + (product_ok ? "yes" : "no")};
}

CriterionResult c10(const Options& o) {
  const ApproxWitness w = aew(transpose_witness(2));
  const auto sic = separable_decomposition_of_transpose_aew(sic_from_fiducial(builtin_fiducial(2)));
  const auto mub = separable_decomposition_of_transpose_aew(mub_prime(2));
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const DensityMatrix rho = random_mixed_state({2, 2}, mix(o.seed + 10, i));
    const double direct = trace_product(rho.op(), w.state.op()).real();
    worst = std::max({worst, std::abs(locc_expectation(rho, sic) - direct),
                      std::abs(locc_expectation(rho, mub) - direct)});
  }
  return {10, "LOCC-decomposed expectation equals the direct trace", worst < 1e-12,
          "max deviation " + sci(worst) + " over 100 states, SIC (4 terms) and MUB (6 terms) (tol 1e-12)"};
}

CriterionResult c11(const Options& o) {
  const ApproxWitness w = aew(transpose_witness(2));
  const DensityMatrix psi_minus = DensityMatrix::pure(singlet(), {2, 2});

  double worst_identity = 0.0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const DensityMatrix rho = random_mixed_state({2, 2}, mix(o.seed + 11, i));
    Complex tr = 0.0;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) tr += rho.op()(r, c) * w.state.op()(c, r);
    worst_identity = std::max(worst_identity,
                              std::abs(swap_test_probability(rho, w.state) - (1.0 + tr.real()) / 2.0));
  }

  int within = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const ShotResult r = sample_overlap(psi_minus, w.state, 100000, mix(o.seed + 111, i));
    const double exact = trace_product(psi_minus.op(), w.state.op()).real();
    if (std::abs(r.estimate - exact) < 4.0 * r.std_error) ++within;
  }
  const ConfidenceResult cr = detect_with_confidence(psi_minus, w, 10000, o.seed, 0.99);
  const bool ok = worst_identity < 1e-15 && within >= 95 && cr.verdict == ConfidenceVerdict::Detected;
  return {11, "Swap-test estimator", ok,
          "identity residual " + sci(worst_identity) + " (tol 1e-15); " + std::to_string(within) +
              "/100 seeds within 4 standard errors at 1e5 shots (need 95); singlet at 99%, 1e4 shots: " +
              std::string(to_string(cr.verdict)) + " (upper bound " + fixed(cr.upper_bound, 4) +
              " < 1/6)"};
}

CriterionResult c12(const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  try {
    const FiducialSearchResult r = fiducial_search(4, o.seed, 2000);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    // Independent certificate from the constructed orbit.
    const Design sic = sic_from_fiducial(r.fiducial);
    double worst = 0.0;
    for (std::size_t j = 0; j < sic.size(); ++j)
      for (std::size_t k = j + 1; k < sic.size(); ++k)
        worst = std::max(worst, std::abs(std::norm(sic.vectors[j].inner(sic.vectors[k])) - 0.2));
    const double fp_res = std::abs(frame_potential(sic) - 128.0 / 5.0);
    const bool ok = worst < 1e-6 && fp_res < 1e-8 && secs < 60.0;
    return {12, "Fiducial search in d=4", ok,
            "max overlap deviation " + sci(worst) + " (tol 1e-6), frame potential residual " +
                sci(fp_res) + " (tol 1e-8), " + std::to_string(r.restarts) +
                " restart(s), time limit 60 s",
            secs};
  } catch (const Error& e) {
    return {12, "Fiducial search in d=4", false, e.what()};
  }
}

CriterionResult c13(const Options&) {
  const DensityMatrix rho = DensityMatrix::pure(Ket::basis(8, 0b010), {2, 2, 2});
  const DetectionReport rep = detect_across_cuts(rho, {parse_cut("A|BC", 3)});
  const CutEntry& e = rep.cuts.front();
  const bool flagged = !rep.caveats.empty();
  const bool ok = std::abs(e.value) < 1e-12 && e.verdict == Verdict::Detected && flagged &&
                  e.ppt && e.ppt->verdict == PptVerdict::PPT;
  return {13, "Product state |010> fires the multipartite threshold and is flagged", ok,
          "value " + fixed(e.value) + " vs threshold " + fixed(e.threshold) + ", PPT oracle " +
              (e.ppt ? std::string(to_string(e.ppt->verdict)) : "?") + ", caveat flag: " +
              (flagged ? "yes" : "no")};
}

}  // namespace

std::vector<CriterionResult> run_all(const Options& opts) {
  if (opts.max_dim < 2) throw DomainError("max_dim must be at least 2");
  const std::vector<std::function<CriterionResult(const Options&)>> criteria = {
      c01, c02, c03, c04, c05, c06, c07, c08, c09, c10, c11, c12, c13};
  std::vector<CriterionResult> out;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      out.push_back(criteria[i](opts));
    } catch (const std::exception& e) {
      out.push_back({static_cast<int>(i + 1), "criterion raised", false, e.what()});
    }
  }
  return out;
}

std::string format(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "[PASS] " : "[FAIL] ") << std::setw(2) << std::setfill('0') << r.id << ' '
     << r.title << ": " << r.detail;
  if (r.seconds > 0.0) os << " [" << fixed(r.seconds, 3) << " s]";
  return os.str();
}

}  // namespace qspa::acceptance
