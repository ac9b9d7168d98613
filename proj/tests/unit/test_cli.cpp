// Copyright 2026 The fhch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "config.hpp"
#include "doctest.h"

using namespace fhch;
using namespace fhch::cli;
namespace fs = std::filesystem;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("fhch_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::vector<std::vector<double>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("defaults parse from an empty file") {
  const RunConfig c = parse("# nothing\n\n");
  CHECK(c.n == 256);
  CHECK(c.potential.delta == 0.1);
  CHECK(c.controls.damping == 0.5);
}

TEST_CASE("keys, comments and lists") {
  const RunConfig c = parse(
      "grid.n = 64  # cells\n"
      "potential.theta0 = 0.8\n"
      "problem.m2 = 0.25\n"
      "forcing.g1.sin_amplitude = 0.1\n"
      "solver.sigma_schedule = 0.5, 1\n"
      "solver.eps_schedule = 0.1,0.01\n"
      "output_dir = out dir\n");
  CHECK(c.n == 64);
  CHECK(c.potential.theta0 == 0.8);
  CHECK(c.m2 == 0.25);
  CHECK(c.g1.sin_amplitude == 0.1);
  CHECK(c.controls.sigma_schedule == std::vector<double>{0.5, 1.0});
  CHECK(c.controls.eps_schedule == std::vector<double>{0.1, 0.01});
  CHECK(c.output_dir == "out dir");
}

TEST_CASE("strict parsing names the key") {
  CHECK_THROWS_WITH_AS(parse("grid.bogus = 1\n"), doctest::Contains("grid.bogus"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse("grid.n = 32\ngrid.n = 64\n"),
                       doctest::Contains("grid.n"), ConfigError);
  CHECK_THROWS_WITH_AS(parse("grid.n = abc\n"), doctest::Contains("grid.n"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse("grid.n = 3.5\n"), doctest::Contains("grid.n"),
                       ConfigError);
  CHECK_THROWS_AS(parse("no equals sign\n"), ConfigError);
}

TEST_CASE("structural constraints are enforced at parse time") {
  CHECK_THROWS_WITH_AS(parse("potential.theta0 = 1.5\npotential.thetac = 1.5\n"),
                       doctest::Contains("thetac"), InvalidParameter);
  CHECK_THROWS_WITH_AS(parse("fluid.lambda1 = 0\n"), doctest::Contains("lambda1"),
                       InvalidParameter);
  CHECK_THROWS_WITH_AS(parse("problem.m1 = 1\nproblem.m2 = 1\n"),
                       doctest::Contains("m2"), InvalidParameter);
  CHECK_THROWS_WITH_AS(parse("solver.damping = 1.5\n"),
                       doctest::Contains("damping"), InvalidParameter);
  CHECK_THROWS_WITH_AS(parse("potential.delta = 0\n"), doctest::Contains("delta"),
                       InvalidParameter);
}

TEST_CASE("every documented key is accepted") {
  const auto& keys = config_keys();
  CHECK(keys.size() > 30);
  for (const std::string& k : {std::string("grid.n"), std::string("max_parallel"),
                               std::string("diagnostics.tau")}) {
    CHECK(std::find(keys.begin(), keys.end(), k) != keys.end());
  }
}

TEST_CASE("real lists") {
  CHECK(parse_real_list("0.2, 0.1,0.05", "x") == std::vector<double>{0.2, 0.1, 0.05});
  CHECK_THROWS_AS(parse_real_list("0.2,,0.1", "x"), ConfigError);
  CHECK_THROWS_AS(parse_real_list("0.2,a", "x"), ConfigError);
}

TEST_CASE("forcing samples") {
  ForcingSpec f;
  CHECK(f.is_zero());
  f.constant = 1.0;
  f.cos_amplitude = 2.0;
  const Field s = f.sample(Grid(8, 1.0));
  CHECK(s[0] == doctest::Approx(1.0 + 2.0 * std::cos(std::numbers::pi / 16)));
}

TEST_CASE("potential command writes a deterministic table") {
  const fs::path a = scratch_dir("pot_a");
  const fs::path b = scratch_dir("pot_b");
  RunConfig c = parse("");
  std::ostringstream log;
  c.output_dir = a.string();
  CHECK(cmd_potential(c, log) == 0);
  c.output_dir = b.string();
  CHECK(cmd_potential(c, log) == 0);
  CHECK(slurp(a / "potential.csv") == slurp(b / "potential.csv"));
  CHECK(slurp(a / "constants.txt") == slurp(b / "constants.txt"));
  CHECK(slurp(a / "constants.txt").find("c_star=9.051482536449e-01") != std::string::npos);
  const auto rows = read_csv(a / "potential.csv");
  CHECK(rows.size() == 4001);
  for (const auto& r : rows) {
    if (std::fabs(r[0]) > 1.1) CHECK(r[6] == 0.0);
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("solve command on zero forcing writes the constant state") {
  const fs::path d = scratch_dir("solve");
  RunConfig c = parse("grid.n = 64\nproblem.m1 = 1\nproblem.m2 = 0.3\nproblem.eps = 0.01\n");
  c.output_dir = d.string();
  std::ostringstream log;
  REQUIRE(cmd_solve(c, log) == 0);
  const auto rows = read_csv(d / "fields.csv");
  REQUIRE(rows.size() == 64);
  const double mu0 = dF_delta(0.3, c.potential);
  for (const auto& r : rows) {
    CHECK(r[1] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::fabs(r[2]) <= 1e-10);
    CHECK(r[3] == doctest::Approx(mu0).epsilon(1e-10));
    CHECK(r[4] == doctest::Approx(0.3).epsilon(1e-10));
  }
  const std::string report = slurp(d / "report.txt");
  CHECK(report.find("converged=1") != std::string::npos);
  CHECK(report.find("ei_slack=") != std::string::npos);
  std::ifstream conv(d / "convergence.csv");
  std::string header;
  std::getline(conv, header);
  CHECK(header == "stage,iteration,residual");
  fs::remove_all(d);
}

TEST_CASE("sweep command") {
  const fs::path d = scratch_dir("sweep");
  RunConfig c = parse(
      "grid.n = 32\nproblem.m1 = 0.5\nproblem.m2 = 0.15\nproblem.eps = 0.01\n"
      "forcing.g1.sin_amplitude = 0.1\n");
  c.output_dir = d.string();
  std::ostringstream log;
  CHECK_THROWS_AS(cmd_sweep(c, "delta", {}, log), InvalidParameter);
  CHECK_THROWS_AS(cmd_sweep(c, "theta", {0.1}, log), InvalidParameter);
  REQUIRE(cmd_sweep(c, "delta", {0.2, 0.1, 0.05}, log) == 0);
  const std::string first = slurp(d / "sweep.csv");
  CHECK(std::count(first.begin(), first.end(), '\n') == 4);
  CHECK(first.find(",ok,") != std::string::npos);
  CHECK(fs::exists(d / "fields_000.csv"));
  CHECK(fs::exists(d / "fields_002.csv"));
  REQUIRE(cmd_sweep(c, "delta", {0.2, 0.1, 0.05}, log) == 0);
  CHECK(slurp(d / "sweep.csv") == first);
  fs::remove_all(d);
}

TEST_CASE("check command passes on the default config") {
  RunConfig c = parse("grid.n = 64\n");
  std::ostringstream log;
  CHECK(cmd_check(c, log) == 0);
  for (const CheckResult& r : run_checks(c)) {
    INFO(r.name << ": " << r.detail);
    CHECK(r.pass);
  }
}

TEST_CASE("unwritable output directory is an io error") {
  RunConfig c = parse("");
  c.output_dir = "/proc/fhch_no_such_dir";
  std::ostringstream log;
  CHECK_THROWS_AS(cmd_potential(c, log), IoError);
}
