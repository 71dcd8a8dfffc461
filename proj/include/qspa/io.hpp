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

// JSON file formats. Complex numbers are always [re, im] pairs.
//
//   state:   {"dims": [2, 2], "matrix": [[[re, im], ...], ...]}
//   design:  {"dim": d, "vectors": [[[re, im], ...], ...]}
//            (a fiducial file is a design file holding one vector)
//   channel: {"d_in": d, "d_out": d, "cj": [[[re, im], ...], ...]}
//   report:  {"cuts": [{"cut", "value", "threshold", "verdict", "ppt"}],
//             "caveats": [...], "estimator": {...}}

#pragma once

#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

#include "qspa/channels.hpp"
#include "qspa/designs.hpp"
#include "qspa/estimator.hpp"
#include "qspa/linalg.hpp"
#include "qspa/witness.hpp"

namespace qspa::io {

using Json = nlohmann::ordered_json;

/// Reads a whole file; ParseError if it cannot be opened.
std::string read_text(const std::filesystem::path& path);
/// Writes `json` with two-space indentation and a trailing newline.
void write_json(const std::filesystem::path& path, const Json& json);
/// Throws ParseError on malformed JSON.
Json parse_json(const std::string& text);

Json complex_to_json(Complex z);
Json matrix_to_json(const Matrix& m);
/// ParseError on a non-square or ragged grid, or a non-finite entry.
Matrix matrix_from_json(const Json& j);

Json state_to_json(const DensityMatrix& rho);
/// ParseError on schema violations, ValidationError on failed state checks.
DensityMatrix state_from_json(const Json& j);
DensityMatrix parse_state_file(const std::filesystem::path& path);

Json vectors_to_json(std::size_t dim, const std::vector<Ket>& vectors);
/// Unit-norm vectors of the stated dimension (1e-10); ParseError otherwise.
std::vector<Ket> vectors_from_json(const Json& j);
/// Residuals are computed on load.
Design design_from_json(const Json& j);
/// Single-vector file; the HW orbit must pass the SIC overlap certificate.
Fiducial fiducial_from_json(const Json& j);

Json channel_to_json(const Channel& e);
Channel channel_from_json(const Json& j);

Json shot_result_to_json(const ShotResult& r);
Json report_to_json(const DetectionReport& report);
/// Adds an "estimator" block keyed by cut label.
Json report_to_json(const DetectionReport& report,
                    const std::map<std::string, ConfidenceResult>& estimator);

}  // namespace qspa::io
