/* Copyright 2026 The cbnorm Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "cbnorm/serialization.hpp"

#include <cmath>
#include <filesystem>
#include <limits>

#include <gtest/gtest.h>

#include "cbnorm/constructions.hpp"
#include "cbnorm/error.hpp"
#include "cbnorm/norms.hpp"
#include "test_support.hpp"

namespace cbnorm {
namespace {

namespace fs = std::filesystem;

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "cbnorm_serialization_test";
  fs::create_directories(dir);
  return dir / name;
}

TEST(FormatDouble, RoundTripsAndStaysFloat) {
  EXPECT_EQ(format_double(1.0), "1.0");
  EXPECT_EQ(format_double(-0.0), "-0.0");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  for (const double v : {M_PI, 1e-300, -2.5e17, std::sqrt(2.0) / 3.0}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(MapFile, RoundTripIsBitIdentical) {
  const fs::path p = temp_file("eg23.json");
  const RightModuleMap t = example_2x3().map;
  save_map(t, p);
  EXPECT_EQ(load_map(p), t);

  Rng rng = make_rng(3);
  const RightModuleMap r = testing::random_map(3, 4, rng);
  save_map(r, p);
  const RightModuleMap back = load_map(p);
  for (int j = 0; j < 4; ++j) {
    for (Eigen::Index i = 0; i < 9; ++i) {
      EXPECT_EQ(back.column(j)(i), r.column(j)(i));
    }
  }
}

TEST(MapFile, NegativeZeroSurvives) {
  CMatrix a = CMatrix::Identity(1, 1);
  a(0, 0) = Complex(-0.0, -0.0);
  const RightModuleMap t(1, 1, {a});
  const RightModuleMap back = map_from_json(parse_json(dump_json(map_to_json(t))));
  EXPECT_TRUE(std::signbit(back.column(0)(0, 0).real()));
  EXPECT_TRUE(std::signbit(back.column(0)(0, 0).imag()));
}

TEST(MapFile, ColumnCountMismatchIsSchemaError) {
  Json j = map_to_json(example_2x3().map);
  j["columns"].erase(2);
  try {
    map_from_json(j);
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("columns"), std::string::npos);
  }
}

TEST(MapFile, WrongOperatorShapeNamesTheField) {
  Json j = map_to_json(example_2x3().map);
  j["columns"][1].erase(1);
  try {
    map_from_json(j);
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("columns[1]"), std::string::npos) << e.what();
  }
}

TEST(MapFile, EmptyAndMalformedFilesAreParseErrors) {
  const fs::path p = temp_file("empty.json");
  write_text_file(p, "");
  EXPECT_THROW(load_map(p), ParseError);
  write_text_file(p, "{\n  \"m\": 2,\n  \"n\": 3,\n  \"columns\": [\n}\n");
  try {
    load_map(p);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    // source:line:column of the offending token.
    EXPECT_NE(std::string(e.what()).find("empty.json:5:"), std::string::npos) << e.what();
  }
  EXPECT_THROW(load_map(temp_file("does_not_exist.json")), ParseError);
}

TEST(MapFile, TypeErrorsAreParseErrors) {
  EXPECT_THROW(map_from_json(parse_json(R"({"m": "2", "n": 1, "columns": []})")), ParseError);
  EXPECT_THROW(map_from_json(parse_json(R"({"m": 1, "n": 1, "columns": [[[1.0]]]})")), ParseError);
  EXPECT_THROW(map_from_json(parse_json("[1, 2]")), ParseError);
  EXPECT_THROW(map_from_json(parse_json(R"({"m": 0, "n": 1, "columns": []})")), SchemaError);
}

TEST(WitnessFile, RoundTripWithAndWithoutValue) {
  const NamedConstruction c = example_2x4();
  const fs::path p = temp_file("w.json");
  save_witness(c.witnesses[1], p);
  const Witness back = load_witness(p);
  EXPECT_EQ(back.k, 2);
  EXPECT_EQ(back.x, c.witnesses[1].x);
  EXPECT_EQ(back.value, c.witnesses[1].value);

  const Witness bare = witness_from_json(parse_json(R"({"k": 1, "x": [[[1.0, 0.0]]]})"));
  EXPECT_EQ(bare.k, 1);
  EXPECT_EQ(bare.value, 0.0);
  EXPECT_THROW(witness_from_json(parse_json(R"({"k": 2, "x": [[[1.0, 0.0]]]})")), SchemaError);
}

TEST(DumpJson, ReportIsStableText) {
  const NormReport r = norm_report(example_2x3().map);
  const std::string a = dump_json(report_to_json(r), 2);
  const std::string b = dump_json(parse_json(a), 2);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("\"cb_witness\""), std::string::npos);
}

}  // namespace
}  // namespace cbnorm
