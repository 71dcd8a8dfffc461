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

// A Heisenberg-Weyl SIC measurement realized as two successive d-outcome
// measurements, followed by outcome-controlled unitaries that prepare the
// complex-conjugate SIC state. The resulting circuit implements the optimal
// approximate transpose without post-selection.
//
// First measurement: diagonal Kraus operators A_k = sum_m |m+k> alpha_m <m+k|.
// Second measurement: Fourier-basis projectors
//   B_l = (1/d) sum_{m,n} omega^{(m-n) l} |m><n|.
// Correction: U_{k,l} = X^k Phi Z^{-2l} X^{-k}, Phi_m = alpha_m^* / alpha_m
// (0 where alpha_m = 0).

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qspa/channels.hpp"
#include "qspa/designs.hpp"
#include "qspa/linalg.hpp"

namespace qspa {

/// One of the finite set of index/adjoint conventions tried when assembling
/// the SIC effects from the two measurements.
struct IndexConvention {
  /// Effect A_k B_l A_k^dagger rather than A_k^dagger B_l A_k.
  bool adjoint_on_right = false;
  /// B_{-l} in place of B_l.
  bool negate_l = false;
  /// A_k built on m - k instead of m + k.
  bool shift_minus = false;
  /// Compare against Z^l X^k |psi> instead of X^k Z^l |psi>.
  bool zx_order = false;

  bool is_raw() const { return !adjoint_on_right && !negate_l && !shift_minus && !zx_order; }
  std::string describe() const;
};

struct ConventionResidual {
  IndexConvention convention;
  double max_residual;  // max_{k,l} || M_{k,l} - |s_{k,l}><s_{k,l}|/d ||_F
};

struct TwoStepMeasurement {
  std::size_t d;
  Fiducial fiducial;
  /// A_k as printed, k = 0..d-1.
  std::vector<Operator> first_kraus;
  /// Kraus operators of the first measurement in the resolved convention:
  /// assembled[k*d+l] = K_k^dagger B_l K_k.
  std::vector<Operator> effective_kraus;
  std::vector<Operator> second_effects;
  /// M_{k,l} at index k*d + l.
  std::vector<Operator> assembled;
  IndexConvention convention;
  /// Residual of every convention tried, in trial order; the raw convention
  /// is always first.
  std::vector<ConventionResidual> residual_table;

  const Operator& effect(std::size_t k, std::size_t l) const { return assembled[k * d + l]; }
  double completeness_residual() const;
  double kraus_completeness_residual() const;
};

/// Throws NotSICError if the fiducial orbit is not a SIC and
/// ConventionMismatch if no convention matches within 1e-10.
TwoStepMeasurement build_two_step(const Fiducial& f);

struct CorrectionSet {
  Operator phi;
  /// U_{k,l} at index k*d + l.
  std::vector<Operator> unitaries;
  /// Some fiducial amplitude vanishes, so Phi (and U_{k,l}) is only a
  /// partial isometry. The corrections remain exact on the orbit states.
  bool partial_isometry;
  /// max_{k,l} phase-free distance between U_{k,l}|s_{k,l}> and |s_{k,l}*>.
  double max_conjugation_distance;
};

CorrectionSet correction_set(const Fiducial& f);

struct CircuitResult {
  std::vector<double> outcome_probs;  // index k*d + l
  DensityMatrix output;
};

/// The full circuit: two-step measurement, forwarded outcome (k,l),
/// post-measurement state |s_{k,l}>, correction U_{k,l}.
CircuitResult simulate_circuit(const Fiducial& f, const DensityMatrix& rho);

/// The circuit's induced map as a channel (built on operator matrix units).
Channel circuit_channel(const Fiducial& f);

}  // namespace qspa
