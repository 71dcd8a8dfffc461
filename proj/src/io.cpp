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

#include "qspa/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qspa/errors.hpp"

namespace qspa::io {

namespace {

Eigen::Index as_index(std::size_t i) { return static_cast<Eigen::Index>(i); }

double finite_number(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(std::string(what) + " must be finite");
  return v;
}

std::size_t positive_integer(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() <= 0)
    throw ParseError(std::string(what) + " must be a positive integer");
  return j.get<std::size_t>();
}

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("complex entries must be [re, im] pairs");
  return {finite_number(j[0], "real part"), finite_number(j[1], "imaginary part")};
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_json(const std::filesystem::path& path, const Json& json) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  out << json.dump(2) << '\n';
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty array of rows");
  const std::size_t n = j.size();
  Matrix m(as_index(n), as_index(n));
  for (std::size_t r = 0; r < n; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || row.size() != n) throw ParseError("matrix must be square");
    for (std::size_t c = 0; c < n; ++c) m(as_index(r), as_index(c)) = complex_from_json(row[c]);
  }
  return m;
}

Json state_to_json(const DensityMatrix& rho) {
  Json j;
  j["dims"] = rho.dims();
  j["matrix"] = matrix_to_json(rho.matrix());
  return j;
}

DensityMatrix state_from_json(const Json& j) {
  const Json& dj = field(j, "dims");
  if (!dj.is_array() || dj.empty()) throw ParseError("dims must be a nonempty array");
  Dims dims;
  for (const auto& x : dj) dims.push_back(positive_integer(x, "dims entry"));
  Matrix m = matrix_from_json(field(j, "matrix"));
  if (total_dim(dims) != static_cast<std::size_t>(m.rows()))
    throw ParseError("dims do not match the matrix size");
  return DensityMatrix(Operator(std::move(dims), std::move(m)));
}

DensityMatrix parse_state_file(const std::filesystem::path& path) {
  return state_from_json(parse_json(read_text(path)));
}

Json vectors_to_json(std::size_t dim, const std::vector<Ket>& vectors) {
  Json vs = Json::array();
  for (const auto& v : vectors) {
    Json amps = Json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) amps.push_back(complex_to_json(v[i]));
    vs.push_back(std::move(amps));
  }
  Json j;
  j["dim"] = dim;
  j["vectors"] = std::move(vs);
  return j;
}

std::vector<Ket> vectors_from_json(const Json& j) {
  const std::size_t d = positive_integer(field(j, "dim"), "dim");
  const Json& vj = field(j, "vectors");
  if (!vj.is_array() || vj.empty()) throw ParseError("vectors must be a nonempty array");
  std::vector<Ket> out;
  for (const auto& v : vj) {
    if (!v.is_array() || v.size() != d) throw ParseError("vector length must equal dim");
    Vector amps(as_index(d));
    for (std::size_t i = 0; i < d; ++i) amps(as_index(i)) = complex_from_json(v[i]);
    const double dev = std::abs(amps.norm() - 1.0);
    if (dev > 1e-10) throw ParseError("vector is not unit norm (deviation " + std::to_string(dev) + ")");
    out.emplace_back(amps / amps.norm());
  }
  return out;
}

Design design_from_json(const Json& j) {
  return make_design(vectors_from_json(j), DesignKind::Custom);
}

Fiducial fiducial_from_json(const Json& j) {
  auto vs = vectors_from_json(j);
  if (vs.size() != 1) throw ParseError("a fiducial file holds exactly one vector");
  Fiducial f(vs.front());
  (void)sic_from_fiducial(f);  // NotSICError if the certificate fails
  return f;
}

Json channel_to_json(const Channel& e) {
  Json j;
  j["d_in"] = e.d_in();
  j["d_out"] = e.d_out();
  j["cj"] = matrix_to_json(e.cj().matrix());
  return j;
}

Channel channel_from_json(const Json& j) {
  const std::size_t d_in = positive_integer(field(j, "d_in"), "d_in");
  const std::size_t d_out = positive_integer(field(j, "d_out"), "d_out");
  Matrix m = matrix_from_json(field(j, "cj"));
  if (static_cast<std::size_t>(m.rows()) != d_in * d_out)
    throw ParseError("cj size must equal d_in * d_out");
  const Operator cj({d_in, d_out}, std::move(m));
  if (!cj.is_hermitian()) throw ValidationError("hermitian", cj.hermiticity_residual());
  return Channel(d_in, d_out, cj);
}

Json shot_result_to_json(const ShotResult& r) {
  Json j;
  j["shots"] = r.shots;
  j["zeros"] = r.zeros;
  j["estimate"] = r.estimate;
  j["std_error"] = r.std_error;
  j["level"] = r.level;
  j["interval"] = Json::array({r.lo, r.hi});
  return j;
}

Json report_to_json(const DetectionReport& report) {
  Json cuts = Json::array();
  for (const auto& c : report.cuts) {
    Json e;
    e["cut"] = c.cut;
    e["value"] = c.value;
    e["threshold"] = c.threshold;
    e["verdict"] = std::string(to_string(c.verdict));
    if (c.ppt) {
      e["ppt"] = std::string(to_string(c.ppt->verdict));
      e["ppt_min_eigenvalue"] = c.ppt->min_eigenvalue;
    }
    cuts.push_back(std::move(e));
  }
  Json j;
  j["cuts"] = std::move(cuts);
  j["caveats"] = report.caveats;
  return j;
}

Json report_to_json(const DetectionReport& report,
                    const std::map<std::string, ConfidenceResult>& estimator) {
  Json j = report_to_json(report);
  if (estimator.empty()) return j;
  Json est = Json::array();
  for (const auto& [cut, r] : estimator) {
    Json e;
    e["cut"] = cut;
    e["verdict"] = std::string(to_string(r.verdict));
    e["threshold"] = r.threshold;
    e["lower_bound"] = r.lower_bound;
    e["upper_bound"] = r.upper_bound;
    e["samples"] = shot_result_to_json(r.shots);
    est.push_back(std::move(e));
  }
  j["estimator"] = std::move(est);
  return j;
}

}  // namespace qspa::io
