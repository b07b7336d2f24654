// Copyright 2026 Spincool Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "spincool/io.hpp"
#include "spincool/ladder.hpp"
#include "spincool/singlet.hpp"

using namespace spincool;

TEST_CASE("flat config parsing") {
  const std::string text =
      "# leading comment\n"
      "omega_c = 1.3e9\n"
      "\n"
      "  N=1e5  ; trailing note\n"
      "label_free = 7 # inline\n";
  const ConfigMap c = parse_config(text);
  REQUIRE(c.entries.size() == 3);
  CHECK(c.entries[0].first == "omega_c");
  CHECK(c.entries[0].second == "1.3e9");
  CHECK(c.entries[1].first == "N");
  CHECK(c.has("label_free"));
  CHECK_FALSE(c.has("absent"));
  CHECK(c.get("N") == "1e5");
  CHECK_THROWS_AS((void)c.get("absent"), std::invalid_argument);

  CHECK_THROWS_AS(parse_config("a = 1\na = 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("just some words\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("key =\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("= value\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("[section]\n"), std::invalid_argument);
}

TEST_CASE("typed config reads") {
  const ConfigMap c = parse_config(
      "x = 2.5\n"
      "f = 1e3\n"
      "yes_flag = true\n"
      "no_flag = 0\n"
      "word = banana\n");
  CHECK(c.number("x") == 2.5);
  CHECK(c.number_or("x", -1.0) == 2.5);
  CHECK(c.number_or("absent", -1.0) == -1.0);
  CHECK(c.rate("f") == doctest::Approx(kTwoPi * 1e3).epsilon(1e-15));
  CHECK(c.rate_or("absent", 4.0) == 4.0);
  CHECK(c.flag_or("yes_flag", false));
  CHECK_FALSE(c.flag_or("no_flag", true));
  CHECK(c.flag_or("absent", true));
  CHECK_THROWS_AS((void)c.number("word"), std::invalid_argument);
  CHECK_THROWS_AS((void)c.flag_or("word", false), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_config("v = nan\n").number("v"),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)parse_config("v = 1e999\n").number("v"),
                  std::invalid_argument);

  const auto stray = c.unknown_keys({"x", "f", "word"});
  REQUIRE(stray.size() == 2);
  CHECK(stray[0] == "yes_flag");
  CHECK(stray[1] == "no_flag");
}

TEST_CASE("physical parameters from the flat schema") {
  const ConfigMap c = parse_config(
      "omega_c = 1.3e9\n"
      "omega_1 = 1.35761e8\n"
      "omega_2 = 1.3e8\n"
      "a = 1.1e5\n"
      "N = 1e5\n"
      "Omega = 5.76e6\n"
      "delta = 0\n"
      "gamma_c = 10e3\n"
      "gamma_b = 2e3\n"
      "tau0_override = 2.15e-6\n");
  const PhysicalParams p = params_from_config(c);
  CHECK(p.omega_c == doctest::Approx(kTwoPi * 1.3e9).epsilon(1e-15));
  CHECK(p.a == doctest::Approx(kTwoPi * 1.1e5).epsilon(1e-15));
  CHECK(p.N == 1e5);  // dimensionless, no conversion
  CHECK(p.Omega == doctest::Approx(kTwoPi * 5.76e6).epsilon(1e-15));
  CHECK(p.delta == 0.0);
  CHECK(p.gamma_c == doctest::Approx(kTwoPi * 1e4).epsilon(1e-15));
  CHECK_FALSE(p.gamma_op.has_value());
  REQUIRE(p.tau0_override.has_value());
  CHECK(*p.tau0_override == 2.15e-6);  // seconds, no conversion

  const PhysicalParams q =
      params_from_config(parse_config("gamma_op = 100\n"));
  REQUIRE(q.gamma_op.has_value());
  CHECK(*q.gamma_op == doctest::Approx(kTwoPi * 100).epsilon(1e-15));
  CHECK(q.omega_c == 0.0);
}

TEST_CASE("sectioned config parsing") {
  const auto sections = parse_sections(
      "# platforms\n"
      "[first]\n"
      "a = 1\n"
      "b = 2\n"
      "[second one]\n"
      "a = 3\n");
  REQUIRE(sections.size() == 2);
  CHECK(sections[0].name == "first");
  CHECK(sections[0].map.number("a") == 1.0);
  CHECK(sections[0].map.number("b") == 2.0);
  CHECK(sections[1].name == "second one");
  CHECK(sections[1].map.number("a") == 3.0);

  CHECK_THROWS_AS(parse_sections("a = 1\n[late]\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_sections("[x]\na = 1\n[x]\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_sections("[]\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_sections("[broken\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_sections("[x]\na = 1\na = 2\n"),
                  std::invalid_argument);
}

TEST_CASE("full-precision formatting round trips") {
  for (double v : {0.0, 1.0, -1.0, 1.0 / 3.0, 6.02214076e23, 1e-300,
                   -2.150814e-6, 6.283185307179586}) {
    const std::string text = format_full(v);
    char* end = nullptr;
    const double back = std::strtod(text.c_str(), &end);
    CHECK(*end == '\0');
    CHECK(back == v);
  }
  CHECK(format_full(1.0) == "1.0000000000000000e+00");
}

TEST_CASE("csv assembly") {
  CsvFile csv({"x", "y"});
  csv.comment("two columns");
  csv.push({"1", "2"});
  csv.push_numbers({0.5, -1.0});
  CHECK(csv.serialize() ==
        "# two columns\n"
        "x,y\n"
        "1,2\n"
        "5.0000000000000000e-01,-1.0000000000000000e+00\n");
  CHECK_THROWS_AS(csv.push({"only one"}), std::invalid_argument);
  CHECK_THROWS_AS(CsvFile({}), std::invalid_argument);
}

TEST_CASE("matrix csv layout") {
  VectorXd rows(2), cols(3);
  rows << 1.0, 2.0;
  cols << 0.25, 0.5, 0.75;
  Eigen::MatrixXd m(2, 3);
  m << 1, 2, 3, 4, 5, 6;
  const std::string text =
      serialize_matrix_csv("kappa", "dephasing", rows, cols, m, {"note"});
  CHECK(text.find("# note\n") == 0);
  CHECK(text.find("# rows: kappa; columns: dephasing\n") != std::string::npos);
  // Header: axis name plus one cell per column; 2 data rows of 1 + 3 cells.
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
  CHECK(text.find("kappa,2.5000000000000000e-01") != std::string::npos);
  CHECK_THROWS_AS(
      serialize_matrix_csv("r", "c", rows, cols, Eigen::MatrixXd(3, 2), {}),
      std::invalid_argument);
}

TEST_CASE("text file round trip") {
  const std::string path = "/tmp/spincool_io_test.txt";
  write_text_file(path, "line\n");
  CHECK(read_text_file(path) == "line\n");
  std::remove(path.c_str());
  CHECK_THROWS_AS((void)read_text_file("/tmp/spincool_io_missing_dir/x"),
                  std::runtime_error);
  CHECK_THROWS_AS(write_text_file("/tmp/spincool_io_missing_dir/x", "y"),
                  std::runtime_error);
}

TEST_CASE("sequence json round trip") {
  const LadderBasis b = build_basis(1.5, 1.5);
  const GateSequence seq = init_guess(2, b);
  const std::string text = sequence_to_json(seq, b);
  CHECK(text.find("\"model\": \"exact\"") != std::string::npos);

  const ParsedSequence back = sequence_from_json(text);
  CHECK(back.i1 == 1.5);
  CHECK(back.i2 == 1.5);
  CHECK(back.seq.model == GateModel::exact);
  REQUIRE(back.seq.steps.size() == seq.steps.size());
  for (size_t i = 0; i < seq.steps.size(); ++i) {
    CHECK(back.seq.steps[i].phi == seq.steps[i].phi);
    CHECK(back.seq.steps[i].tau == seq.steps[i].tau);
  }

  const GateSequence ideal = ideal_sequence(3);
  const ParsedSequence ideal_back =
      sequence_from_json(sequence_to_json(ideal, build_basis(3.5, 3.5)));
  CHECK(ideal_back.seq.model == GateModel::simplified);
  // 7 steps of one phase gate plus one exchange gate each.
  CHECK(ideal_back.seq.steps.size() == 7);

  CHECK_THROWS_AS((void)sequence_from_json("not json"),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)sequence_from_json("{\"model\": \"exact\"}"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      (void)sequence_from_json(
          "{\"model\": \"bogus\", \"basis\": {\"i1\": 1, \"i2\": 1}, "
          "\"steps\": []}"),
      std::invalid_argument);
}
