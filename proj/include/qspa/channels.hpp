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

// Linear maps on operators, stored by their Choi-Jamiolkowski matrix
//
//   chi = (I (x) E)[|phi+><phi+|],  |phi+> = sum_i |ii>/sqrt(d_in),
//
// on the factors {d_in, d_out}. The action is recovered as
// E[rho] = d_in tr_in{chi (rho^T (x) 1)}.

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "qspa/designs.hpp"
#include "qspa/linalg.hpp"

namespace qspa {

/// Channels whose CJ matrices are closer than this in Frobenius norm are
/// considered equal.
inline constexpr double kChannelTol = 1e-10;

class Channel {
 public:
  /// `cj` must be (d_in*d_out)-dimensional; it is re-tagged with dims
  /// {d_in, d_out}.
  Channel(std::size_t d_in, std::size_t d_out, const Operator& cj);

  /// Builds the CJ matrix from the action on the matrix units |i><j|.
  static Channel from_action(std::size_t d_in, std::size_t d_out,
                             const std::function<Operator(const Operator&)>& action);
  static Channel from_kraus(const std::vector<Operator>& kraus);

  std::size_t d_in() const { return d_in_; }
  std::size_t d_out() const { return d_out_; }
  const Operator& cj() const { return cj_; }

  /// Minimum CJ eigenvalue and || tr_out(chi) - 1/d_in ||_F.
  double cj_min_eigenvalue() const { return min_eig_; }
  double marginal_residual() const { return marginal_residual_; }
  bool is_completely_positive() const;
  bool is_trace_preserving() const { return marginal_residual_ < kChannelTol; }
  bool is_cptp() const { return is_completely_positive() && is_trace_preserving(); }

  Operator apply(const Operator& rho) const;
  /// Kraus operators from the CJ eigendecomposition, dropping eigenvalues
  /// below the PSD tolerance. Throws DomainError if not completely positive.
  std::vector<Operator> kraus() const;

 private:
  std::size_t d_in_;
  std::size_t d_out_;
  Operator cj_;
  double min_eig_;
  double max_abs_eig_;
  double marginal_residual_;
};

/// Frobenius distance between CJ matrices.
double cj_distance(const Channel& a, const Channel& b);

/// b after a.
Channel compose(const Channel& a, const Channel& b);

/// Apply a d -> d map to factor `factor` of a multipartite operator.
Operator apply_to_factor(const Channel& e, const Operator& m, std::size_t factor);

Channel identity_channel(std::size_t d);
/// rho -> rho^T. CJ = V/d, not completely positive.
Channel transpose_map(std::size_t d);
/// rho -> tr(rho) 1/d. CJ = 1/d^2.
Channel depolarize_to_identity(std::size_t d);
/// T~ = T/(d+1) + d D/(d+1). CJ = (1 + V)/(d(d+1)).
Channel approx_transpose(std::size_t d);

/// The CJ state of a CPTP channel; DomainError otherwise.
DensityMatrix cj_state(const Channel& e);

/// Inverse CJ map. `chi` must be d (x) d (a single factor of size d^2 is
/// split). Throws NotTracePreserving if tr_out(chi) != 1/d.
Channel channel_from_cj(const DensityMatrix& chi);

struct MeasurePrepare {
  std::vector<Operator> effects;
  std::vector<Ket> preparations;

  Operator apply(const Operator& rho) const;
  Channel channel() const;
  double completeness_residual() const;
};

struct DesignChannel {
  MeasurePrepare scheme;
  Channel channel;
  /// Output trace on a normalized input when the measurement weights 1/N are
  /// used instead of d/N. Equals 1/d, i.e. not trace preserving.
  double unit_weight_output_trace;
};

/// Effects (d/N)|x_k><x_k| with preparations |x_k*>. Throws DomainError if
/// the design fails either the two-design or the coherence check.
DesignChannel measure_prepare_from_design(const Design& g);

/// <psi*| E[|psi><psi|] |psi*>
double pointwise_transpose_fidelity(const Channel& e, const Ket& psi);

}  // namespace qspa
