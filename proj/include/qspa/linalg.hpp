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

// Dense complex linear algebra on small tensor-product Hilbert spaces.
//
// Operators carry the list of their tensor-factor dimensions. The first
// factor is the most significant digit of the flattened index, so that
// kron(|i><j|, |k><l|) has its nonzero entry at (i*d2 + k, j*d2 + l).
// All indices are 0-based.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qspa {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Dims = std::vector<std::size_t>;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
/// Eigenvalues down to -kPsdRelTol * max|lambda| count as nonnegative.
inline constexpr double kPsdRelTol = 1e-9;

std::size_t total_dim(const Dims& dims);

class Ket {
 public:
  explicit Ket(Vector amplitudes);
  Ket(std::initializer_list<Complex> amplitudes);

  /// Computational basis state |index> in dimension d.
  static Ket basis(std::size_t d, std::size_t index);

  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

  double norm() const { return amps_.norm(); }
  Ket normalized() const;
  /// Elementwise complex conjugate in the computational basis.
  Ket conj() const;
  /// <this|other>
  Complex inner(const Ket& other) const;

 private:
  Vector amps_;
};

class Operator {
 public:
  /// Single-factor operator; dims = {rows}.
  explicit Operator(Matrix m);
  Operator(Dims dims, Matrix m);

  static Operator identity(Dims dims);
  static Operator zero(Dims dims);
  /// |psi><psi|
  static Operator projector(const Ket& psi);
  /// |a><b|
  static Operator outer(const Ket& a, const Ket& b);

  const Dims& dims() const { return dims_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(std::size_t r, std::size_t c) const {
    return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

  Complex trace() const { return m_.trace(); }
  Operator adjoint() const { return {dims_, m_.adjoint()}; }
  Operator conj() const { return {dims_, m_.conjugate()}; }
  Operator transpose() const { return {dims_, m_.transpose()}; }
  double frobenius_norm() const { return m_.norm(); }
  /// max |m - m^dagger| over entries.
  double hermiticity_residual() const;
  bool is_hermitian(double tol = kHermitianTol) const {
    return hermiticity_residual() <= tol;
  }
  /// Same entries, different factorization of the same total dimension.
  Operator with_dims(Dims dims) const { return {std::move(dims), m_}; }

  /// <psi|this|psi>
  Complex expectation(const Ket& psi) const;
  Ket apply(const Ket& psi) const;

  Operator& operator+=(const Operator& o);
  Operator& operator-=(const Operator& o);
  Operator& operator*=(Complex s);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Operator a, Complex s) { return a *= s; }
  friend Operator operator*(Complex s, Operator a) { return a *= s; }
  friend Operator operator*(double s, Operator a) { return a *= Complex(s, 0.0); }
  /// Matrix product; dims are taken from the left operand.
  friend Operator operator*(const Operator& a, const Operator& b);

 private:
  Dims dims_;
  Matrix m_;
};

/// A validated density matrix: Hermitian, unit trace, positive semidefinite
/// within the library tolerances. Construction throws ValidationError naming
/// the failed check.
class DensityMatrix {
 public:
  explicit DensityMatrix(Operator op);
  static DensityMatrix pure(const Ket& psi, Dims dims = {});
  static DensityMatrix maximally_mixed(Dims dims);

  const Operator& op() const { return op_; }
  const Dims& dims() const { return op_.dims(); }
  std::size_t dim() const { return op_.dim(); }
  const Matrix& matrix() const { return op_.matrix(); }

 private:
  Operator op_;
};

Operator kron(const Operator& a, const Operator& b);
Operator kron(std::span<const Operator> factors);
Ket kron(const Ket& a, const Ket& b);

/// Trace out every factor not listed in `keep`. Kept factors retain their
/// original relative order.
Operator partial_trace(const Operator& m, std::span<const std::size_t> keep);
Operator partial_trace(const Operator& m, std::initializer_list<std::size_t> keep);

/// Transpose the listed factors in the computational basis.
Operator partial_transpose(const Operator& m, std::span<const std::size_t> subs);
Operator partial_transpose(const Operator& m, std::size_t sub);

/// Swap operator V|a>|b> = |b>|a> on d (x) d.
Operator swap_operator(std::size_t d);

/// tr(a b), exact complex value.
Complex trace_product(const Operator& a, const Operator& b);

double frobenius_distance(const Operator& a, const Operator& b);
/// (1/2) || a - b ||_1 for Hermitian a, b.
double trace_distance(const Operator& a, const Operator& b);

/// min over theta of || u - e^{i theta} v ||; zero iff u and v agree up to a global phase.
double phase_free_distance(const Ket& u, const Ket& v);

struct EigenSystem {
  std::vector<double> values;  // ascending
  std::vector<Ket> vectors;    // orthonormal, vectors[i] pairs with values[i]
};

/// Throws DomainError if `m` is not Hermitian within kHermitianTol.
EigenSystem eig_hermitian(const Operator& m);
double min_eigenvalue(const Operator& m);
/// Minimum eigenvalue is at least -kPsdRelTol times the largest magnitude.
bool is_psd(const Operator& m);

/// Haar-distributed pure state: normalized complex Gaussian vector drawn
/// from a generator seeded with `seed`.
Ket haar_random_ket(std::size_t d, std::uint64_t seed);

/// Mixed state on `dims`: partial trace of a Haar-random pure state on the
/// doubled space.
DensityMatrix random_mixed_state(const Dims& dims, std::uint64_t seed);

}  // namespace qspa
