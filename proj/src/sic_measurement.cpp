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

#include "qspa/sic_measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qspa/errors.hpp"

namespace qspa {

namespace {

Eigen::Index as_index(std::size_t i) { return static_cast<Eigen::Index>(i); }

constexpr double kDecompositionTol = 1e-10;

Operator first_kraus(const Fiducial& f, std::size_t k, bool shift_minus) {
  const std::size_t d = f.dim();
  Matrix a = Matrix::Zero(as_index(d), as_index(d));
  for (std::size_t m = 0; m < d; ++m) {
    const std::size_t pos = shift_minus ? (m + d - k) % d : (m + k) % d;
    a(as_index(pos), as_index(pos)) = f.alpha(m);
  }
  return Operator(std::move(a));
}

Operator fourier_projector(std::size_t d, long l) {
  const long n = static_cast<long>(d);
  const long ll = ((l % n) + n) % n;
  Matrix b(as_index(d), as_index(d));
  for (long m = 0; m < n; ++m)
    for (long j = 0; j < n; ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(((m - j) * ll) % n) /
                           static_cast<double>(n);
      b(m, j) = std::polar(1.0 / static_cast<double>(d), angle);
    }
  return Operator(std::move(b));
}

std::vector<IndexConvention> conventions_in_trial_order() {
  std::vector<IndexConvention> out;
  for (int adj = 0; adj < 2; ++adj)
    for (int neg = 0; neg < 2; ++neg)
      for (int minus = 0; minus < 2; ++minus)
        for (int zx = 0; zx < 2; ++zx)
          out.push_back({adj == 1, neg == 1, minus == 1, zx == 1});
  return out;
}

struct Assembly {
  std::vector<Operator> kraus;
  std::vector<Operator> effects;
  double max_residual;
};

Assembly assemble(const Fiducial& f, const IndexConvention& c) {
  const std::size_t d = f.dim();
  const WeylPair w = weyl_pair(d);
  Assembly out{{}, {}, 0.0};
  for (std::size_t k = 0; k < d; ++k) {
    const Operator a = first_kraus(f, k, c.shift_minus);
    out.kraus.push_back(c.adjoint_on_right ? a.adjoint() : a);
  }
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      const long lk = static_cast<long>(k);
      const long ll = static_cast<long>(l);
      const Operator& kk = out.kraus[k];
      const Operator b = fourier_projector(d, c.negate_l ? -ll : ll);
      Operator m = kk.adjoint() * b * kk;
      const Ket s = c.zx_order ? (w.displacement(0, ll) * w.displacement(lk, 0)).apply(f.ket())
                               : w.displacement(lk, ll).apply(f.ket());
      const Operator target = Operator::projector(s) * Complex(1.0 / static_cast<double>(d), 0.0);
      out.max_residual = std::max(out.max_residual, frobenius_distance(m, target));
      out.effects.push_back(std::move(m));
    }
  return out;
}

// The circuit acting linearly on an arbitrary operator.
Operator circuit_action(const TwoStepMeasurement& tsm, const CorrectionSet& cs,
                        const Design& sic, const Operator& rho) {
  const std::size_t d = tsm.d;
  Operator out = Operator::zero({d});
  for (std::size_t idx = 0; idx < d * d; ++idx) {
    const Complex p = trace_product(tsm.assembled[idx], rho);
    const Ket corrected = cs.unitaries[idx].apply(sic.vectors[idx]);
    out += Operator::projector(corrected) * p;
  }
  return out;
}

}  // namespace

std::string IndexConvention::describe() const {
  if (is_raw()) return "raw";
  std::ostringstream os;
  const char* sep = "";
  if (adjoint_on_right) { os << sep << "effect A_k B_l A_k^dagger"; sep = ", "; }
  if (negate_l) { os << sep << "l -> -l"; sep = ", "; }
  if (shift_minus) { os << sep << "m (-) k shift"; sep = ", "; }
  if (zx_order) { os << sep << "Z^l X^k ordering"; }
  return os.str();
}

double TwoStepMeasurement::completeness_residual() const {
  Operator sum = Operator::zero({d});
  for (const auto& m : assembled) sum += m;
  return frobenius_distance(sum, Operator::identity({d}));
}

double TwoStepMeasurement::kraus_completeness_residual() const {
  Operator sum = Operator::zero({d});
  for (const auto& a : effective_kraus) sum += a.adjoint() * a;
  return frobenius_distance(sum, Operator::identity({d}));
}

TwoStepMeasurement build_two_step(const Fiducial& f) {
  (void)sic_from_fiducial(f);  // throws NotSICError
  const std::size_t d = f.dim();
  TwoStepMeasurement out{d, f, {}, {}, {}, {}, {}, {}};
  for (std::size_t k = 0; k < d; ++k) out.first_kraus.push_back(first_kraus(f, k, false));
  for (std::size_t l = 0; l < d; ++l)
    out.second_effects.push_back(fourier_projector(d, static_cast<long>(l)));

  bool found = false;
  for (const auto& c : conventions_in_trial_order()) {
    Assembly a = assemble(f, c);
    out.residual_table.push_back({c, a.max_residual});
    if (!found && a.max_residual < kDecompositionTol) {
      found = true;
      out.convention = c;
      out.effective_kraus = std::move(a.kraus);
      out.assembled = std::move(a.effects);
    }
  }
  if (!found) {
    std::ostringstream os;
    os << "no index convention reproduces the SIC effects:";
    for (const auto& r : out.residual_table)
      os << "\n  " << r.convention.describe() << ": " << r.max_residual;
    throw ConventionMismatch(os.str());
  }
  return out;
}

CorrectionSet correction_set(const Fiducial& f) {
  const Design sic = sic_from_fiducial(f);
  const std::size_t d = f.dim();
  const WeylPair w = weyl_pair(d);

  Matrix phi = Matrix::Zero(as_index(d), as_index(d));
  bool partial = false;
  for (std::size_t m = 0; m < d; ++m) {
    const Complex a = f.alpha(m);
    if (std::abs(a) > 1e-14) {
      phi(as_index(m), as_index(m)) = std::conj(a) / a;
    } else {
      partial = true;
    }
  }
  CorrectionSet cs{Operator(std::move(phi)), {}, partial, 0.0};
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      const long lk = static_cast<long>(k);
      const long ll = static_cast<long>(l);
      Operator u = w.displacement(lk, 0) * cs.phi * w.displacement(0, -2 * ll) *
                   w.displacement(-lk, 0);
      const Ket& s = sic.vectors[k * d + l];
      const Ket us = u.apply(s);
      const double dist = us.norm() > 0.0 ? phase_free_distance(us.normalized(), s.conj()) : 2.0;
      cs.max_conjugation_distance = std::max(cs.max_conjugation_distance, dist);
      cs.unitaries.push_back(std::move(u));
    }
  return cs;
}

CircuitResult simulate_circuit(const Fiducial& f, const DensityMatrix& rho) {
  if (rho.dim() != f.dim()) throw DomainError("simulate_circuit: dimension mismatch");
  const TwoStepMeasurement tsm = build_two_step(f);
  const CorrectionSet cs = correction_set(f);
  const Design sic = sic_from_fiducial(f);
  std::vector<double> probs;
  probs.reserve(tsm.assembled.size());
  for (const auto& m : tsm.assembled) probs.push_back(trace_product(m, rho.op()).real());
  Operator out = circuit_action(tsm, cs, sic, rho.op());
  return {std::move(probs), DensityMatrix(out.with_dims(rho.dims()))};
}

Channel circuit_channel(const Fiducial& f) {
  const TwoStepMeasurement tsm = build_two_step(f);
  const CorrectionSet cs = correction_set(f);
  const Design sic = sic_from_fiducial(f);
  return Channel::from_action(f.dim(), f.dim(), [&](const Operator& rho) {
    return circuit_action(tsm, cs, sic, rho);
  });
}

}  // namespace qspa
