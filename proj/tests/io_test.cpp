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

#include <gtest/gtest.h>

#include <filesystem>

#include "qspa/errors.hpp"
#include "qspa/io.hpp"

namespace qspa::io {
namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::path(::testing::TempDir()) / name;
}

TEST(StateJson, ParsesMaximallyMixedQubit) {
  const DensityMatrix rho = state_from_json(
      parse_json(R"({"dims":[2],"matrix":[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]})"));
  EXPECT_EQ(rho.dims(), (Dims{2}));
  EXPECT_EQ(rho.matrix(), (Matrix::Identity(2, 2) * 0.5));
}

TEST(StateJson, ValidationFailures) {
  try {
    state_from_json(parse_json(R"({"dims":[2],"matrix":[[[0.45,0],[0,0]],[[0,0],[0.45,0]]]})"));
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.check, "trace");
    EXPECT_NEAR(e.residual, 0.1, 1e-12);
  }
  try {
    state_from_json(parse_json(R"({"dims":[2],"matrix":[[[0.5,0],[0.2,0]],[[0,0],[0.5,0]]]})"));
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.check, "hermitian");
    EXPECT_NEAR(e.residual, 0.2, 1e-12);
  }
}

TEST(StateJson, SchemaErrors) {
  EXPECT_THROW(parse_json("{"), ParseError);
  EXPECT_THROW(state_from_json(parse_json(R"({"matrix":[[[1,0]]]})")), ParseError);
  EXPECT_THROW(state_from_json(parse_json(R"({"dims":[2],"matrix":[[[1,0]]]})")), ParseError);
  EXPECT_THROW(state_from_json(parse_json(R"({"dims":[1],"matrix":[[["1",0]]]})")), ParseError);
  EXPECT_THROW(state_from_json(parse_json(R"({"dims":[1],"matrix":[[[1]]]})")), ParseError);
  EXPECT_THROW(state_from_json(parse_json(R"({"dims":[0],"matrix":[[[1,0]]]})")), ParseError);
  EXPECT_THROW(state_from_json(parse_json(R"({"dims":[2],"matrix":[[[0.5,0],[0,0]],[[0,0]]]})")),
               ParseError);
  EXPECT_THROW(parse_state_file(temp_file("does-not-exist.json")), ParseError);
}

TEST(StateJson, RoundTripIsExact) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const DensityMatrix rho = random_mixed_state({2, 3}, s);
    const auto path = temp_file("roundtrip.json");
    write_json(path, state_to_json(rho));
    const DensityMatrix back = parse_state_file(path);
    EXPECT_EQ(back.dims(), rho.dims());
    EXPECT_EQ(back.matrix(), rho.matrix());
  }
}

TEST(DesignJson, FiducialAndVectors) {
  const Fiducial f = builtin_fiducial(2);
  const Json j = vectors_to_json(2, {f.ket()});
  EXPECT_EQ(fiducial_from_json(j).ket().amplitudes(), f.ket().amplitudes());
  EXPECT_THROW(fiducial_from_json(vectors_to_json(2, {Ket::basis(2, 0)})), NotSICError);
  EXPECT_THROW(fiducial_from_json(vectors_to_json(2, {f.ket(), f.ket()})), ParseError);
  EXPECT_THROW(vectors_from_json(parse_json(R"({"dim":2,"vectors":[[[1,0],[1,0]]]})")), ParseError);
  const Design g = design_from_json(vectors_to_json(2, mub_prime(2).vectors));
  EXPECT_TRUE(g.is_two_design());
}

TEST(ChannelJson, RoundTrip) {
  const Channel t = approx_transpose(3);
  const Channel back = channel_from_json(parse_json(channel_to_json(t).dump()));
  EXPECT_EQ(back.cj().matrix(), t.cj().matrix());
  EXPECT_THROW(channel_from_json(parse_json(R"({"d_in":2,"d_out":2,"cj":[[[1,0]]]})")), ParseError);
}

TEST(ReportJson, Layout) {
  DetectionReport rep;
  rep.cuts.push_back({"A|B", 0.0, 1.0 / 6.0, Verdict::Detected, PptResult{PptVerdict::NPT, -0.5}});
  rep.caveats.push_back("note");
  const Json j = report_to_json(rep);
  EXPECT_EQ(j["cuts"][0]["verdict"], "detected");
  EXPECT_EQ(j["cuts"][0]["ppt"], "NPT");
  EXPECT_EQ(j["caveats"][0], "note");
  EXPECT_FALSE(j.contains("estimator"));
}

}  // namespace
}  // namespace qspa::io
