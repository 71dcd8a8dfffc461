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

// Coherent spherical two-designs: Heisenberg-Weyl SICs and prime-dimension
// mutually unbiased bases, their verification, and a numerical search for
// SIC fiducial vectors.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qspa/linalg.hpp"

namespace qspa {

/// Residuals below this pass the two-design and coherence checks.
inline constexpr double kDesignTol = 1e-10;

/// Shift and clock operators: X|n> = |n+1 mod d>, Z|n> = omega^n |n>.
struct WeylPair {
  std::size_t d;
  Operator x;
  Operator z;
  Complex omega;

  /// X^k Z^l with integer exponents taken modulo d.
  Operator displacement(long k, long l) const;
};

WeylPair weyl_pair(std::size_t d);

enum class DesignKind { MUB, SIC, Custom };
std::string_view to_string(DesignKind kind);

struct Design {
  std::size_t d = 0;
  std::vector<Ket> vectors;
  DesignKind kind = DesignKind::Custom;
  double two_design_residual = 0.0;
  double coherence_residual = 0.0;

  std::size_t size() const { return vectors.size(); }
  bool is_two_design() const { return two_design_residual < kDesignTol; }
  bool is_coherent() const { return coherence_residual < kDesignTol; }
};

/// Validates unit norms (1e-12) and fills in both residuals.
Design make_design(std::vector<Ket> vectors, DesignKind kind);

/// Elementwise complex conjugate of every vector, residuals recomputed.
Design conjugate(const Design& g);

class Fiducial {
 public:
  /// Throws DomainError unless `ket` has unit norm within 1e-10.
  explicit Fiducial(Ket ket);

  std::size_t dim() const { return ket_.dim(); }
  const Ket& ket() const { return ket_; }
  /// Amplitudes alpha_n = <n|psi>.
  Complex alpha(std::size_t n) const { return ket_[n]; }

 private:
  Ket ket_;
};

/// d = 2: t_v|0> + r_v|1> with t_v = sqrt(3+sqrt3)/sqrt6,
/// r_v = e^{i pi/4} sqrt(3-sqrt3)/sqrt6. d = 3: (0, 1, -1)/sqrt2.
/// Any other dimension throws DomainError.
Fiducial builtin_fiducial(std::size_t d);

/// Orbit |s_{k,l}> = X^k Z^l |psi>, stored at index k*d + l. Throws
/// NotSICError unless every cross overlap is 1/(d+1) within 1e-9.
Design sic_from_fiducial(const Fiducial& f);

/// d+1 bases, basis-major: the computational basis first, then for d = 2 the
/// sigma_x and sigma_y eigenbases, and for odd primes the vectors
/// omega^{a m^2 + b m}/sqrt(d) for a = 0..d-1, b = 0..d-1.
Design mub_prime(std::size_t d);

bool is_prime(std::size_t n);

/// || (1/N) sum_k |x_k><x_k| (x) |x_k><x_k| - (1 + V)/(d(d+1)) ||_F
double verify_two_design(const Design& g);
/// || sum_k |x_k><x_k| - (N/d) 1 ||_F
double verify_coherent(const Design& g);
/// sum_{j,k} |<x_j|x_k>|^4
double frame_potential(const Design& g);
/// 2 N^2 / (d (d+1)), the minimum of the frame potential over N vectors.
double two_design_frame_potential(std::size_t d, std::size_t n);

struct FiducialSearchResult {
  Fiducial fiducial;
  /// |FP(orbit) - 2 d^3/(d+1)|
  double frame_potential_residual;
  /// max over cross pairs of | |<s_j|s_k>|^2 - 1/(d+1) |
  double max_overlap_deviation;
  std::size_t iterations;  // of the accepted restart
  std::size_t restarts;    // restarts attempted, including the accepted one
};

/// Multi-restart L-BFGS minimization of the orbit frame potential over the
/// unit sphere. A restart is accepted when the frame potential is within
/// 1e-10 of its minimum and all overlaps are within 1e-6 of 1/(d+1). If
/// `start` is given it is tried (and polished) first. Throws SearchFailed
/// with the best residual when every restart fails.
FiducialSearchResult fiducial_search(std::size_t d, std::uint64_t seed,
                                     std::size_t max_iters,
                                     const std::optional<Ket>& start = std::nullopt,
                                     std::size_t max_restarts = 64);

}  // namespace qspa
