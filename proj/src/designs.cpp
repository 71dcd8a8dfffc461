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

#include "qspa/designs.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "qspa/errors.hpp"

namespace qspa {

namespace {

Eigen::Index as_index(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::size_t mod(long a, std::size_t d) {
  const long n = static_cast<long>(d);
  return static_cast<std::size_t>(((a % n) + n) % n);
}

Complex root_of_unity(std::size_t d, std::size_t power) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(power % d) /
                       static_cast<double>(d);
  return std::polar(1.0, angle);
}

// Cross-pair overlap deviations of a vector family from `target`.
struct OverlapStats {
  double max_deviation = 0.0;
  std::size_t worst_j = 0;
  std::size_t worst_k = 0;
};

OverlapStats overlap_stats(const std::vector<Ket>& vs, double target) {
  OverlapStats s;
  for (std::size_t j = 0; j < vs.size(); ++j)
    for (std::size_t k = j + 1; k < vs.size(); ++k) {
      const double dev = std::abs(std::norm(vs[j].inner(vs[k])) - target);
      if (dev > s.max_deviation) s = {dev, j, k};
    }
  return s;
}

std::vector<Ket> hw_orbit(const Ket& psi) {
  const std::size_t d = psi.dim();
  const WeylPair w = weyl_pair(d);
  std::vector<Ket> out;
  out.reserve(d * d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l)
      out.push_back(w.displacement(static_cast<long>(k), static_cast<long>(l)).apply(psi));
  return out;
}

// ---------------------------------------------------------------------------
// Fiducial search objective.
//
// For a unit vector psi the orbit frame potential is
//   FP = d^2 * sum_{a,b} |<psi| X^a Z^b |psi>|^4.
// The search minimizes the scale-invariant form
//   g(v) = sum_{a,b} |<v|X^a Z^b|v>|^4 / |v|^8
// over v in C^d, flattened to R^{2d} as (Re v, Im v).

class OrbitObjective {
 public:
  explicit OrbitObjective(std::size_t d) : d_(d), omega_(d) {
    for (std::size_t n = 0; n < d; ++n) omega_[n] = root_of_unity(d, n);
  }

  double value_and_gradient(const Eigen::VectorXd& x, Eigen::VectorXd& grad) const {
    const auto n = as_index(d_);
    Vector v = x.head(n).cast<Complex>() + Complex(0, 1) * x.tail(n).cast<Complex>();
    const double norm2 = v.squaredNorm();
    double h = 0.0;
    Vector dh = Vector::Zero(n);  // dh/dv*
    Vector dv(n), ddv(n);
    for (std::size_t a = 0; a < d_; ++a)
      for (std::size_t b = 0; b < d_; ++b) {
        // dv = X^a Z^b v, ddv = (X^a Z^b)^dagger v = Z^{-b} X^{-a} v
        for (std::size_t m = 0; m < d_; ++m) {
          const std::size_t src = (m + d_ - a) % d_;
          dv(as_index(m)) = omega_[(b * src) % d_] * v(as_index(src));
          const std::size_t up = (m + a) % d_;
          ddv(as_index(m)) = std::conj(omega_[(b * m) % d_]) * v(as_index(up));
        }
        const Complex c = v.dot(dv);
        const double c2 = std::norm(c);
        h += c2 * c2;
        dh += 2.0 * c2 * (std::conj(c) * dv + c * ddv);
      }
    const double n4 = norm2 * norm2 * norm2 * norm2;
    const Vector dg = dh / n4 - (4.0 * h / (n4 * norm2)) * v;
    grad.resize(2 * n);
    grad.head(n) = 2.0 * dg.real();
    grad.tail(n) = 2.0 * dg.imag();
    return h / n4;
  }

 private:
  std::size_t d_;
  std::vector<Complex> omega_;
};

struct MinimizeResult {
  Eigen::VectorXd x;
  std::size_t iterations = 0;
};

// Limited-memory BFGS with Armijo backtracking.
MinimizeResult lbfgs(const OrbitObjective& obj, Eigen::VectorXd x, std::size_t max_iters) {
  constexpr std::size_t kMemory = 8;
  constexpr double kGradTol = 1e-13;
  std::deque<std::pair<Eigen::VectorXd, Eigen::VectorXd>> memory;
  Eigen::VectorXd g;
  double f = obj.value_and_gradient(x, g);
  std::size_t it = 0;
  for (; it < max_iters; ++it) {
    if (g.norm() < kGradTol) break;
    // Two-loop recursion.
    Eigen::VectorXd q = g;
    std::vector<double> alpha(memory.size());
    for (std::size_t i = memory.size(); i-- > 0;) {
      const auto& [s, y] = memory[i];
      alpha[i] = s.dot(q) / y.dot(s);
      q -= alpha[i] * y;
    }
    if (!memory.empty()) {
      const auto& [s, y] = memory.back();
      q *= s.dot(y) / y.dot(y);
    }
    for (std::size_t i = 0; i < memory.size(); ++i) {
      const auto& [s, y] = memory[i];
      const double beta = y.dot(q) / y.dot(s);
      q += (alpha[i] - beta) * s;
    }
    Eigen::VectorXd dir = -q;
    double slope = g.dot(dir);
    if (slope >= 0.0) {
      memory.clear();
      dir = -g;
      slope = -g.squaredNorm();
    }
    double t = memory.empty() ? std::min(1.0, 0.1 / g.norm()) : 1.0;
    Eigen::VectorXd x_new, g_new;
    double f_new = f;
    bool accepted = false;
    for (int tries = 0; tries < 60; ++tries) {
      x_new = x + t * dir;
      f_new = obj.value_and_gradient(x_new, g_new);
      if (f_new <= f + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    Eigen::VectorXd s = x_new - x;
    Eigen::VectorXd y = g_new - g;
    if (s.dot(y) > 1e-300) {
      memory.emplace_back(std::move(s), std::move(y));
      if (memory.size() > kMemory) memory.pop_front();
    }
    x = std::move(x_new);
    g = std::move(g_new);
    f = f_new;
    // The objective is scale invariant but its gradient scales as 1/|x|.
    if (std::abs(x.norm() - 1.0) > 1e-2) {
      x.normalize();
      memory.clear();
      f = obj.value_and_gradient(x, g);
    }
  }
  return {std::move(x), it};
}

// Gauss-Newton on the overlap equations |<v|X^a Z^b|v>|^2 = 1/(d+1), (a,b) != 0,
// plus |v|^2 = 1. Converges quadratically near an exact fiducial, which the
// frame potential alone cannot resolve below ~1e-8.
Ket polish(const Ket& psi, std::size_t max_steps = 30) {
  const std::size_t d = psi.dim();
  const auto n = as_index(d);
  const WeylPair w = weyl_pair(d);
  std::vector<Operator> ds;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      if (a != 0 || b != 0) ds.push_back(w.displacement(static_cast<long>(a), static_cast<long>(b)));
  const double target = 1.0 / static_cast<double>(d + 1);
  const auto rows = as_index(ds.size() + 1);

  auto residuals = [&](const Vector& v, Eigen::MatrixXd* jac) {
    Eigen::VectorXd r(rows);
    if (jac) jac->resize(rows, 2 * n);
    for (std::size_t p = 0; p < ds.size(); ++p) {
      const Matrix& m = ds[p].matrix();
      const Vector dv = m * v;
      const Vector ddv = m.adjoint() * v;
      const Complex c = v.dot(dv);
      r(as_index(p)) = std::norm(c) - target;
      if (!jac) continue;
      for (Eigen::Index j = 0; j < n; ++j) {
        const Complex dre = dv(j) + std::conj(ddv(j));
        const Complex dim = Complex(0, -1) * dv(j) + Complex(0, 1) * std::conj(ddv(j));
        (*jac)(as_index(p), j) = 2.0 * (std::conj(c) * dre).real();
        (*jac)(as_index(p), n + j) = 2.0 * (std::conj(c) * dim).real();
      }
    }
    r(rows - 1) = v.squaredNorm() - 1.0;
    if (jac) {
      jac->row(rows - 1).head(n) = 2.0 * v.real().transpose();
      jac->row(rows - 1).tail(n) = 2.0 * v.imag().transpose();
    }
    return r;
  };

  Vector v = psi.amplitudes();
  Eigen::MatrixXd jac;
  Eigen::VectorXd r = residuals(v, &jac);
  for (std::size_t step = 0; step < max_steps && r.lpNorm<Eigen::Infinity>() > 1e-15; ++step) {
    const Eigen::VectorXd dx = jac.completeOrthogonalDecomposition().solve(-r);
    const Vector cand = v + dx.head(n).cast<Complex>() + Complex(0, 1) * dx.tail(n).cast<Complex>();
    Eigen::MatrixXd jac_new;
    const Eigen::VectorXd r_new = residuals(cand, &jac_new);
    if (r_new.norm() >= r.norm()) break;
    v = cand;
    r = r_new;
    jac = std::move(jac_new);
  }
  return Ket(v / v.norm());
}

struct Certificate {
  double fp_residual;
  double overlap_deviation;
  bool passes() const { return fp_residual < 1e-10 && overlap_deviation < 1e-6; }
};

Certificate certify(const Ket& psi) {
  const std::size_t d = psi.dim();
  const std::vector<Ket> orbit = hw_orbit(psi);
  double fp = 0.0;
  for (const auto& a : orbit)
    for (const auto& b : orbit) {
      const double o = std::norm(a.inner(b));
      fp += o * o;
    }
  const double target = two_design_frame_potential(d, d * d);
  return {std::abs(fp - target),
          overlap_stats(orbit, 1.0 / static_cast<double>(d + 1)).max_deviation};
}

Eigen::VectorXd to_real(const Ket& k) {
  const auto n = k.amplitudes().size();
  Eigen::VectorXd x(2 * n);
  x.head(n) = k.amplitudes().real();
  x.tail(n) = k.amplitudes().imag();
  return x;
}

Ket from_real(const Eigen::VectorXd& x) {
  const auto n = x.size() / 2;
  Vector v = x.head(n).cast<Complex>() + Complex(0, 1) * x.tail(n).cast<Complex>();
  return Ket(v / v.norm());
}

}  // namespace

// ---------------------------------------------------------------------------

Operator WeylPair::displacement(long k, long l) const {
  Matrix out = Matrix::Zero(as_index(d), as_index(d));
  const std::size_t kk = mod(k, d);
  const std::size_t ll = mod(l, d);
  // X^k Z^l |n> = omega^{l n} |n + k>
  for (std::size_t n = 0; n < d; ++n)
    out(as_index((n + kk) % d), as_index(n)) = root_of_unity(d, ll * n);
  return Operator(std::move(out));
}

WeylPair weyl_pair(std::size_t d) {
  if (d < 2) throw DomainError("weyl_pair requires d >= 2");
  Matrix x = Matrix::Zero(as_index(d), as_index(d));
  Matrix z = Matrix::Zero(as_index(d), as_index(d));
  for (std::size_t n = 0; n < d; ++n) {
    x(as_index((n + 1) % d), as_index(n)) = 1.0;
    z(as_index(n), as_index(n)) = root_of_unity(d, n);
  }
  return {d, Operator(std::move(x)), Operator(std::move(z)), root_of_unity(d, 1)};
}

std::string_view to_string(DesignKind kind) {
  switch (kind) {
    case DesignKind::MUB: return "mub";
    case DesignKind::SIC: return "sic";
    case DesignKind::Custom: return "custom";
  }
  return "custom";
}

Design make_design(std::vector<Ket> vectors, DesignKind kind) {
  if (vectors.empty()) throw DomainError("design must contain at least one vector");
  const std::size_t d = vectors.front().dim();
  for (const auto& v : vectors) {
    if (v.dim() != d) throw DomainError("design vectors have mixed dimensions");
    if (std::abs(v.norm() - 1.0) > 1e-12)
      throw DomainError("design vector is not unit norm (deviation " +
                        std::to_string(std::abs(v.norm() - 1.0)) + ")");
  }
  Design g{d, std::move(vectors), kind, 0.0, 0.0};
  g.two_design_residual = verify_two_design(g);
  g.coherence_residual = verify_coherent(g);
  return g;
}

Design conjugate(const Design& g) {
  std::vector<Ket> vs;
  vs.reserve(g.size());
  for (const auto& v : g.vectors) vs.push_back(v.conj());
  return make_design(std::move(vs), g.kind);
}

Fiducial::Fiducial(Ket ket) : ket_(std::move(ket)) {
  if (std::abs(ket_.norm() - 1.0) > 1e-10)
    throw DomainError("fiducial must have unit norm");
}

Fiducial builtin_fiducial(std::size_t d) {
  if (d == 2) {
    const double s3 = std::sqrt(3.0);
    const double s6 = std::sqrt(6.0);
    const Complex tv(std::sqrt(3.0 + s3) / s6, 0.0);
    const Complex rv = std::polar(std::sqrt(3.0 - s3) / s6, std::numbers::pi / 4.0);
    return Fiducial(Ket{tv, rv});
  }
  if (d == 3) {
    const double h = 1.0 / std::sqrt(2.0);
    return Fiducial(Ket{0.0, h, -h});
  }
  throw DomainError("no built-in fiducial for d = " + std::to_string(d));
}

Design sic_from_fiducial(const Fiducial& f) {
  const std::size_t d = f.dim();
  if (d < 2) throw DomainError("SIC requires d >= 2");
  std::vector<Ket> orbit = hw_orbit(f.ket());
  const auto stats = overlap_stats(orbit, 1.0 / static_cast<double>(d + 1));
  if (stats.max_deviation > 1e-9)
    throw NotSICError(stats.worst_j, stats.worst_k, stats.max_deviation);
  return make_design(std::move(orbit), DesignKind::SIC);
}

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

Design mub_prime(std::size_t d) {
  if (!is_prime(d)) throw NotPrimeError(d);
  std::vector<Ket> vs;
  vs.reserve(d * (d + 1));
  for (std::size_t n = 0; n < d; ++n) vs.push_back(Ket::basis(d, n));
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  if (d == 2) {
    const Complex i(0.0, 1.0);
    vs.push_back(Ket{s, s});
    vs.push_back(Ket{s, -s});
    vs.push_back(Ket{s, s * i});
    vs.push_back(Ket{s, -s * i});
  } else {
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        Vector v(as_index(d));
        for (std::size_t m = 0; m < d; ++m)
          v(as_index(m)) = s * root_of_unity(d, (a * m * m + b * m) % d);
        vs.emplace_back(std::move(v));
      }
  }
  return make_design(std::move(vs), DesignKind::MUB);
}

double verify_two_design(const Design& g) {
  if (g.vectors.empty()) throw DomainError("empty design");
  const std::size_t d = g.d;
  Operator avg = Operator::zero({d, d});
  for (const auto& v : g.vectors) {
    const Operator p = Operator::projector(v);
    avg += kron(p, p);
  }
  avg *= Complex(1.0 / static_cast<double>(g.size()), 0.0);
  const Operator target = (Operator::identity({d, d}) + swap_operator(d)) *
                          Complex(1.0 / static_cast<double>(d * (d + 1)), 0.0);
  return frobenius_distance(avg, target);
}

double verify_coherent(const Design& g) {
  if (g.vectors.empty()) throw DomainError("empty design");
  Operator sum = Operator::zero({g.d});
  for (const auto& v : g.vectors) sum += Operator::projector(v);
  const double scale = static_cast<double>(g.size()) / static_cast<double>(g.d);
  return frobenius_distance(sum, Operator::identity({g.d}) * Complex(scale, 0.0));
}

double frame_potential(const Design& g) {
  if (g.vectors.empty()) throw DomainError("empty design");
  double fp = 0.0;
  for (const auto& a : g.vectors)
    for (const auto& b : g.vectors) {
      const double o = std::norm(a.inner(b));
      fp += o * o;
    }
  return fp;
}

double two_design_frame_potential(std::size_t d, std::size_t n) {
  const double nn = static_cast<double>(n);
  return 2.0 * nn * nn / static_cast<double>(d * (d + 1));
}

FiducialSearchResult fiducial_search(std::size_t d, std::uint64_t seed,
                                     std::size_t max_iters,
                                     const std::optional<Ket>& start,
                                     std::size_t max_restarts) {
  if (d < 2) throw DomainError("fiducial_search requires d >= 2");
  if (start && start->dim() != d) throw DomainError("start vector has wrong dimension");

  const OrbitObjective objective(d);
  double best = std::numeric_limits<double>::infinity();

  auto attempt = [&](const Ket& initial, std::size_t restart)
      -> std::optional<FiducialSearchResult> {
    const Ket unit = initial.normalized();
    const Certificate c0 = certify(unit);
    if (c0.passes())
      return FiducialSearchResult{Fiducial(unit), c0.fp_residual, c0.overlap_deviation, 0,
                                  restart + 1};
    const MinimizeResult r = lbfgs(objective, to_real(unit), max_iters);
    const Ket psi = polish(from_real(r.x));
    const Certificate c = certify(psi);
    best = std::min(best, c.fp_residual);
    if (c.passes())
      return FiducialSearchResult{Fiducial(psi), c.fp_residual, c.overlap_deviation,
                                  r.iterations, restart + 1};
    return std::nullopt;
  };

  std::size_t restart = 0;
  if (start) {
    if (auto r = attempt(*start, restart)) return *r;
    ++restart;
  }
  std::seed_seq base{seed};
  std::vector<std::uint64_t> seeds(max_restarts);
  {
    std::vector<std::uint32_t> raw(2 * max_restarts);
    base.generate(raw.begin(), raw.end());
    for (std::size_t i = 0; i < max_restarts; ++i)
      seeds[i] = (std::uint64_t{raw[2 * i]} << 32) | raw[2 * i + 1];
  }
  for (std::size_t i = 0; i < max_restarts; ++i, ++restart)
    if (auto r = attempt(haar_random_ket(d, seeds[i]), restart)) return *r;
  throw SearchFailed(best);
}

}  // namespace qspa
