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

// Entanglement witnesses and their approximate (physical) counterparts.
//
// An approximate witness is the state rho_W = (1 - p) W + p 1/D with the
// smallest p making it positive. For any state rho,
//
//   tr{rho rho_W} = (1 - p) tr{rho W} + p/D,
//
// so tr{rho W} < 0 exactly when tr{rho rho_W} < p/D.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qspa/channels.hpp"
#include "qspa/designs.hpp"
#include "qspa/linalg.hpp"

namespace qspa {

/// Half-width of the band around a threshold reported as "boundary".
inline constexpr double kBoundaryBand = 1e-9;
/// Partial-transpose eigenvalues below this make a state NPT.
inline constexpr double kNptTol = 1e-9;

/// Hermitian, unit-trace operator.
class Witness {
 public:
  explicit Witness(Operator op);
  const Operator& op() const { return op_; }
  const Dims& dims() const { return op_.dims(); }
  std::size_t dim() const { return op_.dim(); }

 private:
  Operator op_;
};

struct SeparableDecomposition {
  std::vector<double> weights;
  std::vector<DensityMatrix> left;
  std::vector<DensityMatrix> right;

  std::size_t size() const { return weights.size(); }
  Operator reconstruct() const;
};

struct ApproxWitness {
  DensityMatrix state;
  double p_min;
  double threshold;
  std::optional<Witness> source;
  std::optional<SeparableDecomposition> decomposition;
};

enum class Verdict { Detected, NotDetected, Boundary };
enum class PptVerdict { NPT, PPT };
std::string_view to_string(Verdict v);
std::string_view to_string(PptVerdict v);

/// Verdict rule shared by every detector: detected below threshold - band,
/// boundary within the band.
Verdict classify(double value, double threshold);

struct PptResult {
  PptVerdict verdict;
  double min_eigenvalue;
};

struct CutEntry {
  std::string cut;
  double value;
  double threshold;
  Verdict verdict;
  std::optional<PptResult> ppt;
};

struct DetectionReport {
  std::vector<CutEntry> cuts;
  std::vector<std::string> caveats;
};

/// W = V/d on d (x) d.
Witness transpose_witness(std::size_t d);

/// p = |l| D / (1 + |l| D) with l the minimum eigenvalue of W (0 if W >= 0).
double spa_pmin(const Witness& w);

ApproxWitness aew(const Witness& w);

/// tr{rho rho_W} against the witness threshold. DomainError on mismatch.
CutEntry detect(const DensityMatrix& rho, const ApproxWitness& a, std::string cut_label = "");

/// Weights 1/N, factors |x_k><x_k| (x) |x_k><x_k|, reconstructing
/// (1 + V)/(d(d+1)). DomainError unless the design passes both checks.
SeparableDecomposition separable_decomposition_of_transpose_aew(const Design& g);

/// sum_k q_k tr{rho (tau_k (x) sigma_k)}
double locc_expectation(const DensityMatrix& rho, const SeparableDecomposition& dec);

/// (I (x) T~ on factor `cut`)[|GHZ><GHZ|], |GHZ> = sum_j |j>^{(x) n}/sqrt(d),
/// computed from the partial transpose and the partial trace directly.
Operator multipartite_oracle(std::size_t n, std::size_t d, std::size_t cut);

/// (1/d^2) sum_k |s_k><s_k| (x) |psi_k><psi_k| with the s_k factor placed at
/// `cut` and |psi_k> = sum_j <s_k|j> |j...j>. With `conjugate_cut` the cut
/// factor carries |s_k*> instead.
Operator multipartite_closed_form(std::size_t n, std::size_t cut, const Design& g,
                                  bool conjugate_cut);

struct MultipartiteWitness {
  ApproxWitness aew;
  std::size_t parties;
  std::size_t cut;
  /// Frobenius distance between the oracle and the closed form, per
  /// conjugation variant (present when a SIC design was supplied).
  std::optional<double> closed_form_residual;
  std::optional<double> closed_form_conjugate_residual;
};

/// The oracle state with threshold 1/(d(d+1)); p_min records the
/// depolarizing weight d/(d+1) of T~. DomainError on an invalid cut, or a
/// design in the wrong dimension.
MultipartiteWitness multipartite_aew(std::size_t n, std::size_t d, std::size_t cut,
                                     const Design* g = nullptr);

/// (1/3)|GHZ><GHZ| + (1/6)(P_001 + P_010 + P_101 + P_110) on three qubits.
DensityMatrix tripartite_example_state();

struct TripartiteEvaluation {
  DetectionReport report;
  /// Oracle value at A|BC.
  double abc_value;
  /// The value printed for the worked example, 1/18.
  double printed_abc_value;
  /// Values of the closed form at A|BC in both conjugation variants.
  double abc_closed_form_value;
  double abc_closed_form_conjugate_value;
};

/// Evaluates the three cuts A|BC, B|CA, C|AB with the oracle construction
/// and the PPT cross-check.
TripartiteEvaluation evaluate_tripartite_example();

/// Eigensolve of the partial transpose on the listed subsystems.
PptResult ppt_check(const DensityMatrix& rho, const std::vector<std::size_t>& cut);

struct CutSpec {
  std::string label;
  std::vector<std::size_t> left;   // parties on the transposed side
  std::vector<std::size_t> right;
};

/// Parses "A|BC"-style labels with parties A.. in dims order. Both sides
/// must be nonempty, disjoint, and cover all `parties`. DomainError
/// otherwise.
CutSpec parse_cut(std::string_view spec, std::size_t parties);

/// Per-cut detection of `rho` (equal local dimensions) with the multipartite
/// witness of the single party on the left of `cut`, plus the PPT oracle
/// and the caveat flag when the threshold fires on a PPT cut.
DetectionReport detect_across_cuts(const DensityMatrix& rho, const std::vector<CutSpec>& cuts);

}  // namespace qspa
