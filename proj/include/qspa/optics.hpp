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

// Single-photon linear-optics realization of the qubit approximate transpose.
//
// The photon lives on (path (x) polarization), four paths indexed
// p = 2k + l, polarization basis (|0> = V, |1> = H). The pipeline:
//
//   PPBS     splits path 0 into the arms k = 0 (transmitted, path 0) and
//            k = 1 (reflected, path 2); amplitudes realize the first
//            measurement's Kraus operators
//   HWP      22.5 deg in each arm, Fourier transform on polarization
//   PBS      V stays in path 2k (l = 0), H moves to path 2k+1 (l = 1)
//   JONES    fixed per-path retarder mapping the port polarization |l> to
//            the SIC state |s_{k,l}>
//   PS       per-path phase on the H component, solved so that the path
//            state becomes |s_{k,l}*>
//   COUPLER  4-to-1 incoherent combination (path traced out)

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "qspa/channels.hpp"
#include "qspa/designs.hpp"
#include "qspa/linalg.hpp"
#include "qspa/sic_measurement.hpp"

namespace qspa::optics {

inline constexpr std::size_t kPaths = 4;
inline constexpr std::size_t kPolarization = 2;

enum class ElementKind { PPBS, HWP, PBS, PS, JONES, COUPLER };
std::string_view to_string(ElementKind kind);

/// Transmission/reflection amplitudes for V and H photons.
struct BeamSplitterAmplitudes {
  Complex t_v, r_v, t_h, r_h;
};

struct OpticalElement {
  ElementKind kind;
  /// PPBS: {transmit, reflect}; PBS: {V port, H port}; others: single path.
  /// COUPLER: all combined paths.
  std::vector<std::size_t> paths;
  double angle = 0.0;  // HWP, radians from the V axis
  double phase = 0.0;  // PS, radians applied to the H component
  BeamSplitterAmplitudes amplitudes{};  // PPBS
  std::optional<Operator> jones{};      // JONES
};

/// Matrix on the element's mode subspace, ordered (local path, polarization).
/// For the coupler, the identity on its paths (its action is the trace over
/// path, applied by the pipeline). Throws DomainError on bad parameters.
Operator element_matrix(const OpticalElement& e);

struct PathPhase {
  std::size_t path;
  /// Relative phase applied to H so that PS|s_{k,l}> ~ |s_{k,l}*>.
  double solved_phase;
};

struct Pipeline {
  Fiducial fiducial;
  IndexConvention convention;
  std::vector<OpticalElement> stages;
  std::vector<PathPhase> phases;
  /// The printed phase-shifter value -pi/4.
  double printed_phase = 0.0;
  /// Every solved relative phase equals +-2 * printed value (mod 2 pi),
  /// i.e. a symmetric split e^{-+i pi/4} on the two components reproduces it.
  bool symmetric_split_matches_printed = false;
};

/// Throws DomainError unless f is a qubit SIC fiducial, CalibrationError if
/// a per-path correction phase cannot reach the conjugate state.
Pipeline build_fig2_pipeline(const Fiducial& f);

/// Mode-space operator (dims {4, 2}) with the photon in path 0.
Operator inject(const Operator& polarization_state);

/// Propagate through the stages [0, stop) (all stages if stop is absent),
/// never applying the coupler's trace.
Operator propagate(const Pipeline& p, const Operator& mode_state,
                   std::optional<std::size_t> stop = std::nullopt);

/// Index of the first stage of the given kind.
std::size_t stage_index(const Pipeline& p, ElementKind kind);

/// Probability of finding the photon in each path after the PBS stage.
std::vector<double> path_probabilities(const Pipeline& p, const DensityMatrix& rho);

/// Normalized polarization state in every path just before the phase
/// shifters (nullopt for a path with zero probability).
std::vector<std::optional<Ket>> conditional_states_before_ps(const Pipeline& p,
                                                             const DensityMatrix& rho);

/// Polarization state after the coupler.
Operator output_state(const Pipeline& p, const Operator& polarization_state);

Channel output_channel(const Pipeline& p);

}  // namespace qspa::optics
