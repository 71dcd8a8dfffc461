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

#include "qspa/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "qspa/errors.hpp"

namespace qspa {

namespace {

Eigen::Index as_index(std::size_t i) { return static_cast<Eigen::Index>(i); }

// Mixed-radix digits of a flattened index, most significant factor first.
void split_index(std::size_t idx, const Dims& dims, std::vector<std::size_t>& out) {
  out.resize(dims.size());
  for (std::size_t f = dims.size(); f-- > 0;) {
    out[f] = idx % dims[f];
    idx /= dims[f];
  }
}

std::size_t join_index(const std::vector<std::size_t>& digits, const Dims& dims) {
  std::size_t idx = 0;
  for (std::size_t f = 0; f < dims.size(); ++f) idx = idx * dims[f] + digits[f];
  return idx;
}

void check_subsystems(const Dims& dims, std::span<const std::size_t> subs) {
  std::vector<bool> seen(dims.size(), false);
  for (std::size_t s : subs) {
    if (s >= dims.size())
      throw IndexError("subsystem " + std::to_string(s) + " out of range for " +
                       std::to_string(dims.size()) + " factors");
    if (seen[s]) throw IndexError("subsystem " + std::to_string(s) + " repeated");
    seen[s] = true;
  }
}

}  // namespace

std::size_t total_dim(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

// ---------------------------------------------------------------------------
// Ket

Ket::Ket(Vector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw DomainError("ket must have positive dimension");
  if (!amps_.allFinite()) throw DomainError("ket amplitudes must be finite");
}

Ket::Ket(std::initializer_list<Complex> amplitudes)
    : Ket(Vector::Map(amplitudes.begin(), as_index(amplitudes.size()))) {}

Ket Ket::basis(std::size_t d, std::size_t index) {
  if (index >= d) throw IndexError("basis index out of range");
  Vector v = Vector::Zero(as_index(d));
  v(as_index(index)) = 1.0;
  return Ket(std::move(v));
}

Ket Ket::normalized() const {
  const double n = norm();
  if (n == 0.0) throw DomainError("cannot normalize the zero vector");
  return Ket(amps_ / n);
}

Ket Ket::conj() const { return Ket(amps_.conjugate()); }

Complex Ket::inner(const Ket& other) const {
  if (other.dim() != dim()) throw DomainError("ket dimension mismatch");
  return amps_.dot(other.amps_);  // Eigen's dot conjugates the left operand
}

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(Matrix m) : Operator(Dims{}, std::move(m)) {}

Operator::Operator(Dims dims, Matrix m) : dims_(std::move(dims)), m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw DomainError("operator must be square");
  if (dims_.empty() && m_.rows() > 0) dims_ = {static_cast<std::size_t>(m_.rows())};
  if (dims_.empty() || total_dim(dims_) != static_cast<std::size_t>(m_.rows()))
    throw DomainError("factor dimensions do not match the matrix size");
  if (!m_.allFinite()) throw DomainError("operator entries must be finite");
}

Operator Operator::identity(Dims dims) {
  const auto n = as_index(total_dim(dims));
  return {std::move(dims), Matrix::Identity(n, n)};
}

Operator Operator::zero(Dims dims) {
  const auto n = as_index(total_dim(dims));
  return {std::move(dims), Matrix::Zero(n, n)};
}

Operator Operator::projector(const Ket& psi) { return outer(psi, psi); }

Operator Operator::outer(const Ket& a, const Ket& b) {
  if (a.dim() != b.dim()) throw DomainError("outer product dimension mismatch");
  return Operator(Matrix(a.amplitudes() * b.amplitudes().adjoint()));
}

double Operator::hermiticity_residual() const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

Complex Operator::expectation(const Ket& psi) const {
  if (psi.dim() != dim()) throw DomainError("expectation dimension mismatch");
  return psi.amplitudes().dot(m_ * psi.amplitudes());
}

Ket Operator::apply(const Ket& psi) const {
  if (psi.dim() != dim()) throw DomainError("operator/ket dimension mismatch");
  return Ket(m_ * psi.amplitudes());
}

Operator& Operator::operator+=(const Operator& o) {
  if (o.dim() != dim()) throw DomainError("operator sum dimension mismatch");
  m_ += o.m_;
  return *this;
}

Operator& Operator::operator-=(const Operator& o) {
  if (o.dim() != dim()) throw DomainError("operator difference dimension mismatch");
  m_ -= o.m_;
  return *this;
}

Operator& Operator::operator*=(Complex s) {
  m_ *= s;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) throw DomainError("operator product dimension mismatch");
  return {a.dims(), a.matrix() * b.matrix()};
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Operator op) : op_(std::move(op)) {
  const double herm = op_.hermiticity_residual();
  if (herm > kHermitianTol) throw ValidationError("hermitian", herm);
  const double tr = std::abs(op_.trace() - Complex(1.0, 0.0));
  if (tr > kTraceTol) throw ValidationError("trace", tr);
  const auto vals = eig_hermitian(op_).values;
  const double scale = std::max(std::abs(vals.front()), std::abs(vals.back()));
  if (vals.front() < -kPsdRelTol * scale) throw ValidationError("psd", -vals.front());
}

DensityMatrix DensityMatrix::pure(const Ket& psi, Dims dims) {
  Operator p = Operator::projector(psi);
  if (!dims.empty()) p = p.with_dims(std::move(dims));
  return DensityMatrix(std::move(p));
}

DensityMatrix DensityMatrix::maximally_mixed(Dims dims) {
  const double n = static_cast<double>(total_dim(dims));
  return DensityMatrix(Operator::identity(std::move(dims)) * Complex(1.0 / n, 0.0));
}

// ---------------------------------------------------------------------------
// Tensor structure

Operator kron(const Operator& a, const Operator& b) {
  const Matrix& am = a.matrix();
  const Matrix& bm = b.matrix();
  Matrix out(am.rows() * bm.rows(), am.cols() * bm.cols());
  for (Eigen::Index r = 0; r < am.rows(); ++r)
    for (Eigen::Index c = 0; c < am.cols(); ++c)
      out.block(r * bm.rows(), c * bm.cols(), bm.rows(), bm.cols()) = am(r, c) * bm;
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return {std::move(dims), std::move(out)};
}

Operator kron(std::span<const Operator> factors) {
  if (factors.empty()) throw DomainError("kron of an empty factor list");
  Operator acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = kron(acc, factors[i]);
  return acc;
}

Ket kron(const Ket& a, const Ket& b) {
  Vector out(a.amplitudes().size() * b.amplitudes().size());
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i)
    out.segment(i * b.amplitudes().size(), b.amplitudes().size()) =
        a.amplitudes()(i) * b.amplitudes();
  return Ket(std::move(out));
}

Operator partial_trace(const Operator& m, std::span<const std::size_t> keep) {
  const Dims& dims = m.dims();
  if (keep.empty()) throw IndexError("partial trace must keep at least one factor");
  check_subsystems(dims, keep);
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  std::vector<bool> is_kept(dims.size(), false);
  for (std::size_t k : kept) is_kept[k] = true;

  Dims out_dims;
  for (std::size_t k : kept) out_dims.push_back(dims[k]);
  const std::size_t n = m.dim();
  Matrix out = Matrix::Zero(as_index(total_dim(out_dims)), as_index(total_dim(out_dims)));

  std::vector<std::size_t> rd, cd, ro(kept.size()), co(kept.size());
  for (std::size_t r = 0; r < n; ++r) {
    split_index(r, dims, rd);
    for (std::size_t c = 0; c < n; ++c) {
      split_index(c, dims, cd);
      bool diagonal = true;
      for (std::size_t f = 0; f < dims.size() && diagonal; ++f)
        if (!is_kept[f] && rd[f] != cd[f]) diagonal = false;
      if (!diagonal) continue;
      for (std::size_t i = 0; i < kept.size(); ++i) {
        ro[i] = rd[kept[i]];
        co[i] = cd[kept[i]];
      }
      out(as_index(join_index(ro, out_dims)), as_index(join_index(co, out_dims))) += m(r, c);
    }
  }
  return {std::move(out_dims), std::move(out)};
}

Operator partial_trace(const Operator& m, std::initializer_list<std::size_t> keep) {
  return partial_trace(m, std::span<const std::size_t>(keep.begin(), keep.size()));
}

Operator partial_transpose(const Operator& m, std::span<const std::size_t> subs) {
  const Dims& dims = m.dims();
  check_subsystems(dims, subs);
  const std::size_t n = m.dim();
  Matrix out(as_index(n), as_index(n));
  std::vector<std::size_t> rd, cd;
  for (std::size_t r = 0; r < n; ++r) {
    split_index(r, dims, rd);
    for (std::size_t c = 0; c < n; ++c) {
      split_index(c, dims, cd);
      auto rs = rd;
      auto cs = cd;
      for (std::size_t s : subs) std::swap(rs[s], cs[s]);
      out(as_index(join_index(rs, dims)), as_index(join_index(cs, dims))) = m(r, c);
    }
  }
  return {dims, std::move(out)};
}

Operator partial_transpose(const Operator& m, std::size_t sub) {
  return partial_transpose(m, std::span<const std::size_t>(&sub, 1));
}

Operator swap_operator(std::size_t d) {
  if (d == 0) throw DomainError("swap operator needs d >= 1");
  Matrix v = Matrix::Zero(as_index(d * d), as_index(d * d));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) v(as_index(b * d + a), as_index(a * d + b)) = 1.0;
  return {Dims{d, d}, std::move(v)};
}

Complex trace_product(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) throw DomainError("trace product dimension mismatch");
  // tr(AB) = sum_ij A_ij B_ji
  return (a.matrix().array() * b.matrix().transpose().array()).sum();
}

double frobenius_distance(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) throw DomainError("distance dimension mismatch");
  return (a.matrix() - b.matrix()).norm();
}

double trace_distance(const Operator& a, const Operator& b) {
  const auto vals = eig_hermitian(a - b).values;
  double s = 0.0;
  for (double v : vals) s += std::abs(v);
  return 0.5 * s;
}

double phase_free_distance(const Ket& u, const Ket& v) {
  if (u.dim() != v.dim()) throw DomainError("ket dimension mismatch");
  const Complex ov = v.inner(u);
  const Complex phase = std::abs(ov) > 0.0 ? ov / std::abs(ov) : Complex(1.0, 0.0);
  return (u.amplitudes() - phase * v.amplitudes()).norm();
}

// ---------------------------------------------------------------------------
// Spectra

EigenSystem eig_hermitian(const Operator& m) {
  const double herm = m.hermiticity_residual();
  if (herm > kHermitianTol)
    throw DomainError("eig_hermitian: input not Hermitian (residual " +
                      std::to_string(herm) + ")");
  // Symmetrize so the solver sees an exactly Hermitian matrix.
  const Matrix h = 0.5 * (m.matrix() + m.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) throw DomainError("eigensolver did not converge");
  EigenSystem out;
  const auto n = h.rows();
  out.values.reserve(static_cast<std::size_t>(n));
  out.vectors.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values.push_back(solver.eigenvalues()(i));
    out.vectors.emplace_back(solver.eigenvectors().col(i));
  }
  return out;
}

double min_eigenvalue(const Operator& m) { return eig_hermitian(m).values.front(); }

bool is_psd(const Operator& m) {
  const auto vals = eig_hermitian(m).values;
  const double scale = std::max(std::abs(vals.front()), std::abs(vals.back()));
  return vals.front() >= -kPsdRelTol * scale;
}

// ---------------------------------------------------------------------------
// Random states

Ket haar_random_ket(std::size_t d, std::uint64_t seed) {
  if (d == 0) throw DomainError("haar_random_ket: dimension must be positive");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(as_index(d));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = normal(gen);
    const double im = normal(gen);
    v(i) = Complex(re, im);
  }
  return Ket(v / v.norm());
}

DensityMatrix random_mixed_state(const Dims& dims, std::uint64_t seed) {
  const std::size_t n = total_dim(dims);
  const Ket psi = haar_random_ket(n * n, seed);
  Operator joint({n, n}, Operator::projector(psi).matrix());
  Operator reduced = partial_trace(joint, {0});
  return DensityMatrix(reduced.with_dims(dims));
}

}  // namespace qspa
