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

// End-to-end verification suite: every criterion the library is accepted
// against, with its tolerance fixed here.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qspa::acceptance {

struct Options {
  /// Largest dimension swept by the dimension-indexed criteria (>= 2).
  std::size_t max_dim = 5;
  std::uint64_t seed = 20260101;
};

struct CriterionResult {
  int id;
  std::string title;
  bool passed;
  std::string detail;
  /// Wall-clock time for timed criteria, 0 otherwise. Kept out of `detail`
  /// so reports are reproducible.
  double seconds = 0.0;
};

std::vector<CriterionResult> run_all(const Options& opts = {});

/// "[PASS] 01 title: detail"
std::string format(const CriterionResult& r);

}  // namespace qspa::acceptance
