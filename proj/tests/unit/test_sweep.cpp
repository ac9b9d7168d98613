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

#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"

using namespace fhch;
using fhch::testing::forced_problem;

namespace {

std::string csv(const SweepReport& r) {
  std::ostringstream os;
  write_sweep_csv(os, r);
  return os.str();
}

}  // namespace

TEST_CASE("sweep keys") {
  CHECK(parse_sweep_key("delta") == SweepKey::kDelta);
  CHECK(parse_sweep_key("eps") == SweepKey::kEps);
  CHECK_THROWS_AS(parse_sweep_key("theta"), InvalidParameter);
  CHECK(std::string(to_string(SweepKey::kEps)) == "eps");
}

TEST_CASE("sweep values must be strictly decreasing in (0, 1)") {
  const ProblemSpec s = forced_problem(32, 0.1);
  const SolveControls c;
  CHECK_THROWS_AS(delta_sweep(s, {}, c), InvalidParameter);
  CHECK_THROWS_AS(delta_sweep(s, {0.1, 0.2}, c), InvalidParameter);
  CHECK_THROWS_AS(delta_sweep(s, {0.1, 0.1}, c), InvalidParameter);
  CHECK_THROWS_AS(eps_sweep(s, {1.0}, c), InvalidParameter);
  CHECK_THROWS_AS(eps_sweep(s, {0.1, 0.0}, c), InvalidParameter);
}

TEST_CASE("parallel and sequential sweeps give identical csv") {
  const ProblemSpec s = forced_problem(32, 0.1);
  const SolveControls c;
  const std::vector<double> v{0.2, 0.1, 0.05};
  const SweepReport a = delta_sweep(s, v, c, 1);
  const SweepReport b = delta_sweep(s, v, c, 3);
  const SweepReport d = delta_sweep(s, v, c, 2);
  CHECK(a.all_ok());
  CHECK(csv(a) == csv(b));
  CHECK(csv(a) == csv(d));
  REQUIRE(a.rows.size() == 3);
  for (const SweepRow& r : a.rows) {
    CHECK(r.state.has_value());
    CHECK(r.max_mass_error <= 1e-12);
    CHECK(r.picard_iterations > 0);
  }
  CHECK(a.rows[0].value == 0.2);
}

TEST_CASE("sweep csv layout") {
  const ProblemSpec s = forced_problem(32, 0.1);
  const SweepReport a = eps_sweep(s, {1e-1, 1e-2}, SolveControls{});
  std::istringstream in(csv(a));
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("value,status,total_energy,", 0) == 0);
  CHECK(header.size() > 20);
  CHECK(header.substr(header.size() - 18) == ",picard_iterations");
  std::string row;
  std::getline(in, row);
  CHECK(row.rfind("1.000000000000e-01,ok,", 0) == 0);
}

TEST_CASE("unconverged values are flagged per row") {
  const ProblemSpec s = forced_problem(32, 0.1);
  SolveControls c;
  c.max_picard = 1;
  const SweepReport r = delta_sweep(s, {0.2, 0.1}, c, 2);
  CHECK_FALSE(r.all_ok());
  for (const SweepRow& row : r.rows) CHECK(row.status == "not_converged");
}

TEST_CASE("solver errors become error rows") {
  ProblemSpec s = forced_problem(32, 0.1);
  s.m2 = 2.0 * s.m1;  // rejected by validation inside each solve
  const SweepReport r = delta_sweep(s, {0.2}, SolveControls{});
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].status == "error");
  CHECK(r.rows[0].message.find("m2") != std::string::npos);
  CHECK(std::isnan(r.rows[0].report.total_energy));
}
