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

#include "qspa/optics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qspa/errors.hpp"

namespace qspa::optics {

namespace {

Eigen::Index as_index(std::size_t i) { return static_cast<Eigen::Index>(i); }

constexpr double kUnitaryTol = 1e-12;

double wrap_phase(double phi) {
  double w = std::remainder(phi, 2.0 * std::numbers::pi);
  if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
  return w;
}

void require_unitary(const Matrix& m, std::string_view what) {
  const double r = (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).norm();
  if (r > kUnitaryTol)
    throw DomainError(std::string(what) + " matrix is not unitary (residual " +
                      std::to_string(r) + ")");
}

// Full mode-space operator acting as `local` on the listed paths.
Matrix embed(const Matrix& local, const std::vector<std::size_t>& paths) {
  const auto n = as_index(kPaths * kPolarization);
  Matrix full = Matrix::Identity(n, n);
  for (std::size_t a : paths)
    for (std::size_t pa = 0; pa < kPolarization; ++pa)
      full(as_index(a * kPolarization + pa), as_index(a * kPolarization + pa)) = 0.0;
  for (std::size_t a = 0; a < paths.size(); ++a)
    for (std::size_t pa = 0; pa < kPolarization; ++pa)
      for (std::size_t b = 0; b < paths.size(); ++b)
        for (std::size_t pb = 0; pb < kPolarization; ++pb)
          full(as_index(paths[a] * kPolarization + pa), as_index(paths[b] * kPolarization + pb)) =
              local(as_index(a * kPolarization + pa), as_index(b * kPolarization + pb));
  return full;
}

Operator path_block(const Operator& mode_state, std::size_t path) {
  const auto off = as_index(path * kPolarization);
  return Operator(Matrix(mode_state.matrix().block(off, off, 2, 2)));
}

}  // namespace

std::string_view to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::PPBS: return "PPBS";
    case ElementKind::HWP: return "HWP";
    case ElementKind::PBS: return "PBS";
    case ElementKind::PS: return "PS";
    case ElementKind::JONES: return "JONES";
    case ElementKind::COUPLER: return "COUPLER";
  }
  return "?";
}

Operator element_matrix(const OpticalElement& e) {
  switch (e.kind) {
    case ElementKind::PPBS: {
      if (e.paths.size() != 2) throw DomainError("PPBS acts on two paths");
      const auto& a = e.amplitudes;
      const Complex t[2] = {a.t_v, a.t_h};
      const Complex r[2] = {a.r_v, a.r_h};
      Matrix m = Matrix::Zero(4, 4);
      for (Eigen::Index j = 0; j < 2; ++j) {
        m(j, j) = t[j];
        m(2 + j, j) = r[j];
        m(j, 2 + j) = -std::conj(r[j]);
        m(2 + j, 2 + j) = std::conj(t[j]);
      }
      require_unitary(m, "PPBS");
      return Operator({2, 2}, std::move(m));
    }
    case ElementKind::HWP: {
      if (e.paths.size() != 1) throw DomainError("HWP acts on one path");
      const double c = std::cos(2.0 * e.angle);
      const double s = std::sin(2.0 * e.angle);
      Matrix m(2, 2);
      m << c, s, s, -c;
      return Operator(std::move(m));
    }
    case ElementKind::PBS: {
      if (e.paths.size() != 2) throw DomainError("PBS acts on two paths");
      // V (index 0) stays in the first path, H (index 1) is routed to the second.
      Matrix m = Matrix::Zero(4, 4);
      m(0, 0) = 1.0;
      m(2, 2) = 1.0;
      m(3, 1) = 1.0;
      m(1, 3) = 1.0;
      return Operator({2, 2}, std::move(m));
    }
    case ElementKind::PS: {
      if (e.paths.size() != 1) throw DomainError("PS acts on one path");
      Matrix m = Matrix::Zero(2, 2);
      m(0, 0) = 1.0;
      m(1, 1) = std::polar(1.0, e.phase);
      return Operator(std::move(m));
    }
    case ElementKind::JONES: {
      if (e.paths.size() != 1) throw DomainError("JONES acts on one path");
      if (!e.jones || e.jones->dim() != 2) throw DomainError("JONES needs a 2x2 matrix");
      require_unitary(e.jones->matrix(), "JONES");
      return *e.jones;
    }
    case ElementKind::COUPLER: {
      if (e.paths.empty()) throw DomainError("COUPLER needs at least one path");
      return Operator::identity({e.paths.size(), kPolarization});
    }
  }
  throw DomainError("unknown optical element kind");
}

Pipeline build_fig2_pipeline(const Fiducial& f) {
  if (f.dim() != 2) throw DomainError("the optical pipeline acts on polarization qubits");
  const Design sic = sic_from_fiducial(f);
  const TwoStepMeasurement tsm = build_two_step(f);

  Pipeline p{f, tsm.convention, {}, {}, -std::numbers::pi / 4.0, true};

  // PPBS: transmitted arm realizes K_0, reflected arm K_1.
  const Operator& k0 = tsm.effective_kraus[0];
  const Operator& k1 = tsm.effective_kraus[1];
  OpticalElement ppbs{ElementKind::PPBS, {0, 2}};
  ppbs.amplitudes = {k0(0, 0), k1(0, 0), k0(1, 1), k1(1, 1)};
  p.stages.push_back(ppbs);

  for (std::size_t arm : {0u, 2u}) {
    OpticalElement hwp{ElementKind::HWP, {arm}};
    hwp.angle = std::numbers::pi / 8.0;
    p.stages.push_back(hwp);
  }
  for (std::size_t arm : {0u, 2u}) p.stages.push_back({ElementKind::PBS, {arm, arm + 1}});

  for (std::size_t path = 0; path < kPaths; ++path) {
    const std::size_t l = path % 2;
    const Ket& s = sic.vectors[path];
    const Ket perp{-std::conj(s[1]), std::conj(s[0])};
    Matrix r(2, 2);
    r.col(as_index(l)) = s.amplitudes();
    r.col(as_index(1 - l)) = perp.amplitudes();
    OpticalElement jones{ElementKind::JONES, {path}};
    jones.jones = Operator(std::move(r));
    p.stages.push_back(jones);
  }

  for (std::size_t path = 0; path < kPaths; ++path) {
    const Ket& s = sic.vectors[path];
    double phase = 0.0;
    if (std::abs(s[0]) > 1e-14 && std::abs(s[1]) > 1e-14)
      phase = wrap_phase(2.0 * (std::arg(s[0]) - std::arg(s[1])));
    OpticalElement ps{ElementKind::PS, {path}};
    ps.phase = phase;
    const Ket corrected = element_matrix(ps).apply(s);
    const double dist = phase_free_distance(corrected, s.conj());
    if (dist > 1e-10)
      throw CalibrationError("path " + std::to_string(path) +
                             ": no phase-shifter setting reaches the conjugate state (distance " +
                             std::to_string(dist) + ")");
    p.phases.push_back({path, phase});
    const double split = std::abs(wrap_phase(phase - 2.0 * p.printed_phase));
    const double split_neg = std::abs(wrap_phase(phase + 2.0 * p.printed_phase));
    if (std::min(split, split_neg) > 1e-12) p.symmetric_split_matches_printed = false;
    p.stages.push_back(ps);
  }

  p.stages.push_back({ElementKind::COUPLER, {0, 1, 2, 3}});
  return p;
}

Operator inject(const Operator& polarization_state) {
  if (polarization_state.dim() != kPolarization)
    throw DomainError("inject expects a polarization operator");
  Matrix m = Matrix::Zero(as_index(kPaths), as_index(kPaths));
  m(0, 0) = 1.0;
  return kron(Operator(std::move(m)), polarization_state.with_dims({kPolarization}));
}

Operator propagate(const Pipeline& p, const Operator& mode_state, std::optional<std::size_t> stop) {
  const std::size_t end = std::min(stop.value_or(p.stages.size()), p.stages.size());
  Matrix rho = mode_state.matrix();
  for (std::size_t i = 0; i < end; ++i) {
    const OpticalElement& e = p.stages[i];
    if (e.kind == ElementKind::COUPLER) continue;
    const Matrix u = embed(element_matrix(e).matrix(), e.paths);
    rho = u * rho * u.adjoint();
  }
  return {{kPaths, kPolarization}, std::move(rho)};
}

std::size_t stage_index(const Pipeline& p, ElementKind kind) {
  for (std::size_t i = 0; i < p.stages.size(); ++i)
    if (p.stages[i].kind == kind) return i;
  throw DomainError("pipeline has no " + std::string(to_string(kind)) + " stage");
}

std::vector<double> path_probabilities(const Pipeline& p, const DensityMatrix& rho) {
  // Last PBS is the stage right before the first JONES.
  const Operator out = propagate(p, inject(rho.op()), stage_index(p, ElementKind::JONES));
  std::vector<double> probs;
  for (std::size_t path = 0; path < kPaths; ++path)
    probs.push_back(path_block(out, path).trace().real());
  return probs;
}

std::vector<std::optional<Ket>> conditional_states_before_ps(const Pipeline& p,
                                                             const DensityMatrix& rho) {
  const Operator out = propagate(p, inject(rho.op()), stage_index(p, ElementKind::PS));
  std::vector<std::optional<Ket>> states;
  for (std::size_t path = 0; path < kPaths; ++path) {
    const Operator block = path_block(out, path);
    const double prob = block.trace().real();
    if (prob < 1e-14) {
      states.emplace_back(std::nullopt);
      continue;
    }
    states.emplace_back(eig_hermitian(block).vectors.back());
  }
  return states;
}

Operator output_state(const Pipeline& p, const Operator& polarization_state) {
  const Operator out = propagate(p, inject(polarization_state));
  return partial_trace(out, {1});
}

Channel output_channel(const Pipeline& p) {
  return Channel::from_action(kPolarization, kPolarization,
                              [&](const Operator& rho) { return output_state(p, rho); });
}

}  // namespace qspa::optics
