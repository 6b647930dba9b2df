#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "stbc/curve_io.hpp"

using namespace stbc;

namespace {

Curve sample_bound_curve() {
  Curve c;
  c.label = "M2N1K1L1R1";
  c.kind = "integral";
  c.points = {{0.0, 0.25, {}},
              {10.0, 3.0000000000000004e-05, {}},
              {20.0, 1.0 / 3.0, {}}};
  return c;
}

Curve sample_sim_curve() {
  Curve c;
  c.label = "M2N1K1L1R1";
  c.kind = "sim:bpsk";
  c.points = {{0.0, 0.1234, 0.001}, {10.0, 0.1, 0.25}};
  return c;
}

SystemConfig sample_cfg() {
  SystemConfig cfg;
  cfg.M = 2;
  cfg.N = 1;
  cfg.K = 1;
  cfg.L = 1;
  cfg.R = 1.0;
  cfg.P = 1.0;
  return cfg;
}

RunMeta sample_meta() {
  RunMeta meta;
  meta.config = sample_cfg();
  meta.snr_grid_db = {0.0, 10.0, 20.0};
  meta.kinds = {"integral"};
  meta.trials = 1000;
  meta.seed = 42;
  meta.format = "json";
  meta.out = "-";
  return meta;
}

bool points_equal(const Curve& a, const Curve& b) {
  if (a.points.size() != b.points.size()) return false;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    if (a.points[i].snr_db != b.points[i].snr_db) return false;
    if (a.points[i].value != b.points[i].value) return false;
    if (a.points[i].ci.has_value() != b.points[i].ci.has_value()) return false;
    if (a.points[i].ci && *a.points[i].ci != *b.points[i].ci) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("csv round trip preserves exact doubles and order") {
  const std::vector<Curve> curves = {sample_bound_curve(), sample_sim_curve()};
  const std::string text = curves_to_csv(curves);
  CHECK(text.rfind("snr_db,value,ci,kind,label\n", 0) == 0);

  std::istringstream in(text);
  const std::vector<Curve> back = parse_curves_csv(in);
  REQUIRE(back.size() == 2);
  CHECK(back[0].kind == "integral");
  CHECK(back[1].kind == "sim:bpsk");
  CHECK(back[0].label == "M2N1K1L1R1");
  CHECK(points_equal(back[0], curves[0]));
  CHECK(points_equal(back[1], curves[1]));
  CHECK_FALSE(back[0].config.has_value());

  // Writing the reparsed curves reproduces the bytes.
  CHECK(curves_to_csv(back) == text);
}

TEST_CASE("json round trip preserves exact doubles and metadata") {
  const std::vector<Curve> curves = {sample_bound_curve(), sample_sim_curve()};
  const std::string text = curves_to_json(curves, sample_meta());
  CHECK(text.find("\"snr_grid_db\"") != std::string::npos);
  CHECK(text.back() == '\n');

  std::istringstream in(text);
  const std::vector<Curve> back = parse_curves_json(in);
  REQUIRE(back.size() == 2);
  CHECK(points_equal(back[0], curves[0]));
  CHECK(points_equal(back[1], curves[1]));
  // JSON carries the producing configuration; parsing restores it.
  REQUIRE(back[0].config.has_value());
  CHECK(back[0].config->M == 2);
  CHECK(back[0].config->R == 1.0);
}

TEST_CASE("csv parser reports the offending line") {
  auto expect_error_mentioning = [](const std::string& text, const std::string& token) {
    std::istringstream in(text);
    try {
      parse_curves_csv(in);
      FAIL("expected CurveParseError for: " << text);
    } catch (const CurveParseError& e) {
      CHECK(std::string(e.what()).find(token) != std::string::npos);
    }
  };

  expect_error_mentioning("wrong,header\n0,1,,integral,x\n", "header");
  const std::string head = "snr_db,value,ci,kind,label\n";
  expect_error_mentioning(head + "0,0.5,,integral\n", "line 2");
  expect_error_mentioning(head + "0,0.5,,integral,x\nnope,0.5,,integral,x\n", "line 3");
  expect_error_mentioning(head + "0,1.5,,integral,x\n", "[0, 1]");        // value > 1
  expect_error_mentioning(head + "0,0.5,-0.1,sim,x\n", "ci must");        // negative ci
  expect_error_mentioning(head + "0,0.5,,integral,x\n0,0.4,,integral,x\n",
                          "increasing");                                  // snr not increasing
  expect_error_mentioning(head + "0,0.5x,,integral,x\n", "line 2");       // trailing junk
  expect_error_mentioning(head, "no data rows");                          // header only
  expect_error_mentioning("", "line 1");                                  // empty input
}

TEST_CASE("validation rejects labels that break the csv schema") {
  Curve c = sample_bound_curve();
  c.label = "bad,label";
  CHECK_THROWS_AS(curves_to_csv({c}), std::invalid_argument);
  c.label = "bad\"quote";
  CHECK_THROWS_AS(curves_to_csv({c}), std::invalid_argument);
  c.label = "";
  CHECK_THROWS_AS(curves_to_csv({c}), std::invalid_argument);
}

TEST_CASE("file reader sniffs the format") {
  const std::string dir = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp");
  const std::string csv_path = dir + "/stbc_curves_test.csv";
  const std::string json_path = dir + "/stbc_curves_test.json";

  {
    std::ofstream f(csv_path);
    f << curves_to_csv({sample_bound_curve()});
  }
  {
    std::ofstream f(json_path);
    f << curves_to_json({sample_bound_curve()}, sample_meta());
  }

  CHECK(read_curves_file(csv_path).size() == 1);
  CHECK(read_curves_file(json_path).size() == 1);
  CHECK(points_equal(read_curves_file(csv_path)[0], sample_bound_curve()));
  CHECK(points_equal(read_curves_file(json_path)[0], sample_bound_curve()));
  CHECK_THROWS_AS(read_curves_file(dir + "/no_such_file.csv"), std::invalid_argument);

  std::remove(csv_path.c_str());
  std::remove(json_path.c_str());
}

TEST_CASE("shortest-exact double formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.0) == "0");
  for (double v : {3.0000000000000004e-05, 1.0 / 3.0, 6.02e23, 5e-324}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}
