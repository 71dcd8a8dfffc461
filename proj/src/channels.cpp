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

#include "qspa/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qspa/errors.hpp"

namespace qspa {

namespace {

Eigen::Index as_index(std::size_t i) { return static_cast<Eigen::Index>(i); }

Operator matrix_unit(std::size_t d, std::size_t i, std::size_t j) {
  Matrix m = Matrix::Zero(as_index(d), as_index(d));
  m(as_index(i), as_index(j)) = 1.0;
  return Operator(std::move(m));
}

}  // namespace

Channel::Channel(std::size_t d_in, std::size_t d_out, const Operator& cj)
    : d_in_(d_in), d_out_(d_out), cj_(cj.with_dims({d_in, d_out})) {
  if (d_in == 0 || d_out == 0) throw DomainError("channel dimensions must be positive");
  const auto vals = eig_hermitian(cj_).values;
  min_eig_ = vals.front();
  max_abs_eig_ = std::max(std::abs(vals.front()), std::abs(vals.back()));
  const Operator marginal = partial_trace(cj_, {0});
  marginal_residual_ = frobenius_distance(
      marginal, Operator::identity({d_in}) * Complex(1.0 / static_cast<double>(d_in), 0.0));
}

Channel Channel::from_action(std::size_t d_in, std::size_t d_out,
                             const std::function<Operator(const Operator&)>& action) {
  Matrix chi = Matrix::Zero(as_index(d_in * d_out), as_index(d_in * d_out));
  for (std::size_t i = 0; i < d_in; ++i)
    for (std::size_t j = 0; j < d_in; ++j) {
      const Operator out = action(matrix_unit(d_in, i, j));
      if (out.dim() != d_out) throw DomainError("action returned wrong output dimension");
      chi.block(as_index(i * d_out), as_index(j * d_out), as_index(d_out), as_index(d_out)) =
          out.matrix();
    }
  chi /= static_cast<double>(d_in);
  return Channel(d_in, d_out, Operator({d_in, d_out}, std::move(chi)));
}

Channel Channel::from_kraus(const std::vector<Operator>& kraus) {
  if (kraus.empty()) throw DomainError("empty Kraus list");
  const std::size_t d = kraus.front().dim();
  return from_action(d, d, [&](const Operator& rho) {
    Operator out = Operator::zero({d});
    for (const auto& k : kraus) out += k * rho * k.adjoint();
    return out;
  });
}

bool Channel::is_completely_positive() const {
  return min_eig_ >= -kPsdRelTol * max_abs_eig_;
}

Operator Channel::apply(const Operator& rho) const {
  if (rho.dim() != d_in_) throw DomainError("channel input dimension mismatch");
  Matrix out = Matrix::Zero(as_index(d_out_), as_index(d_out_));
  const Matrix& chi = cj_.matrix();
  for (std::size_t i = 0; i < d_in_; ++i)
    for (std::size_t j = 0; j < d_in_; ++j) {
      const Complex r = rho(i, j);
      if (r == Complex(0.0, 0.0)) continue;
      out += r * chi.block(as_index(i * d_out_), as_index(j * d_out_), as_index(d_out_),
                           as_index(d_out_));
    }
  out *= static_cast<double>(d_in_);
  return Operator(std::move(out));
}

std::vector<Operator> Channel::kraus() const {
  if (!is_completely_positive()) throw DomainError("Kraus form requires a CP map");
  const EigenSystem es = eig_hermitian(cj_);
  std::vector<Operator> out;
  for (std::size_t n = 0; n < es.values.size(); ++n) {
    const double lambda = es.values[n];
    if (lambda <= kPsdRelTol * max_abs_eig_) continue;
    // chi = sum lambda |v><v| with v_{(i,a)} = K_{a i} / sqrt(d_in lambda)
    const double scale = std::sqrt(static_cast<double>(d_in_) * lambda);
    Matrix k(as_index(d_out_), as_index(d_in_));
    for (std::size_t i = 0; i < d_in_; ++i)
      for (std::size_t a = 0; a < d_out_; ++a)
        k(as_index(a), as_index(i)) = scale * es.vectors[n][i * d_out_ + a];
    out.emplace_back(std::move(k));
  }
  return out;
}

double cj_distance(const Channel& a, const Channel& b) {
  if (a.d_in() != b.d_in() || a.d_out() != b.d_out())
    throw DomainError("cj_distance: channel shapes differ");
  return frobenius_distance(a.cj(), b.cj());
}

Channel compose(const Channel& a, const Channel& b) {
  if (a.d_out() != b.d_in()) throw DomainError("compose: dimension mismatch");
  return Channel::from_action(a.d_in(), b.d_out(),
                              [&](const Operator& rho) { return b.apply(a.apply(rho)); });
}

Operator apply_to_factor(const Channel& e, const Operator& m, std::size_t factor) {
  const Dims& dims = m.dims();
  if (factor >= dims.size()) throw IndexError("factor index out of range");
  const std::size_t d = dims[factor];
  if (e.d_in() != d || e.d_out() != d)
    throw DomainError("apply_to_factor: channel dimension does not match factor");

  // Stride of the factor's digit in the flattened index.
  std::size_t stride = 1;
  for (std::size_t f = factor + 1; f < dims.size(); ++f) stride *= dims[f];
  const std::size_t n = m.dim();

  std::vector<Operator> images;
  images.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) images.push_back(e.apply(matrix_unit(d, i, j)));

  Matrix out = Matrix::Zero(as_index(n), as_index(n));
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = (r / stride) % d;
    const std::size_t r0 = r - i * stride;
    for (std::size_t c = 0; c < n; ++c) {
      const Complex v = m(r, c);
      if (v == Complex(0.0, 0.0)) continue;
      const std::size_t j = (c / stride) % d;
      const std::size_t c0 = c - j * stride;
      const Operator& img = images[i * d + j];
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          out(as_index(r0 + a * stride), as_index(c0 + b * stride)) += v * img(a, b);
    }
  }
  return {dims, std::move(out)};
}

Channel identity_channel(std::size_t d) {
  if (d < 1) throw DomainError("identity_channel requires d >= 1");
  return Channel::from_action(d, d, [](const Operator& rho) { return rho; });
}

Channel transpose_map(std::size_t d) {
  if (d < 2) throw DomainError("transpose_map requires d >= 2");
  return Channel(d, d, swap_operator(d) * Complex(1.0 / static_cast<double>(d), 0.0));
}

Channel depolarize_to_identity(std::size_t d) {
  if (d < 2) throw DomainError("depolarize_to_identity requires d >= 2");
  const double dd = static_cast<double>(d);
  return Channel(d, d, Operator::identity({d, d}) * Complex(1.0 / (dd * dd), 0.0));
}

Channel approx_transpose(std::size_t d) {
  if (d < 2) throw DomainError("approx_transpose requires d >= 2");
  const double dd = static_cast<double>(d);
  const Operator cj = transpose_map(d).cj() * Complex(1.0 / (dd + 1.0), 0.0) +
                      depolarize_to_identity(d).cj() * Complex(dd / (dd + 1.0), 0.0);
  return Channel(d, d, cj);
}

DensityMatrix cj_state(const Channel& e) {
  if (!e.is_cptp()) throw DomainError("cj_state requires a CPTP channel");
  return DensityMatrix(e.cj());
}

Channel channel_from_cj(const DensityMatrix& chi) {
  Dims dims = chi.dims();
  if (dims.size() == 1) {
    const auto d = static_cast<std::size_t>(std::llround(std::sqrt(double(dims[0]))));
    if (d * d != dims[0]) throw DomainError("CJ matrix dimension is not a square");
    dims = {d, d};
  }
  if (dims.size() != 2) throw DomainError("CJ matrix must be bipartite");
  Channel e(dims[0], dims[1], chi.op());
  if (!e.is_trace_preserving()) throw NotTracePreserving(e.marginal_residual());
  return e;
}

Operator MeasurePrepare::apply(const Operator& rho) const {
  const std::size_t d = preparations.front().dim();
  Operator out = Operator::zero({d});
  for (std::size_t k = 0; k < effects.size(); ++k) {
    const Complex p = trace_product(effects[k], rho);
    out += Operator::projector(preparations[k]) * p;
  }
  return out;
}

Channel MeasurePrepare::channel() const {
  if (effects.empty() || effects.size() != preparations.size())
    throw DomainError("measure-prepare scheme needs one preparation per effect");
  const std::size_t d_in = effects.front().dim();
  const std::size_t d_out = preparations.front().dim();
  return Channel::from_action(d_in, d_out, [this](const Operator& rho) { return apply(rho); });
}

double MeasurePrepare::completeness_residual() const {
  Operator sum = Operator::zero({effects.front().dim()});
  for (const auto& e : effects) sum += e;
  return frobenius_distance(sum, Operator::identity({sum.dim()}));
}

DesignChannel measure_prepare_from_design(const Design& g) {
  if (!g.is_two_design())
    throw DomainError("design fails the two-design check (residual " +
                      std::to_string(g.two_design_residual) + ")");
  if (!g.is_coherent())
    throw DomainError("design is not coherent (residual " +
                      std::to_string(g.coherence_residual) + ")");
  const double weight = static_cast<double>(g.d) / static_cast<double>(g.size());
  MeasurePrepare mp;
  for (const auto& x : g.vectors) {
    mp.effects.push_back(Operator::projector(x) * Complex(weight, 0.0));
    mp.preparations.push_back(x.conj());
  }
  Channel ch = mp.channel();

  // Same scheme with unit weights 1/N on the maximally mixed input.
  const Operator mixed =
      Operator::identity({g.d}) * Complex(1.0 / static_cast<double>(g.d), 0.0);
  const double unit_trace = (mp.apply(mixed).trace().real()) / static_cast<double>(g.d);
  return {std::move(mp), std::move(ch), unit_trace};
}

double pointwise_transpose_fidelity(const Channel& e, const Ket& psi) {
  if (!e.is_cptp()) throw DomainError("fidelity requires a CPTP channel");
  const Operator out = e.apply(Operator::projector(psi));
  return out.expectation(psi.conj()).real();
}

}  // namespace qspa
