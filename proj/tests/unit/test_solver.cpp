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

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"

using namespace fhch;
using fhch::testing::forced_problem;
using fhch::testing::max_rel_dev;
using fhch::testing::unforced_problem;

namespace {

ManufacturedProblem mms(int n, double eps = 0.1) {
  ProblemSpec base;
  base.grid = Grid(n, 1.0);
  base.m1 = 1.0;
  return manufactured_problem(base, MmsConfig{}, eps);
}

SolveControls mms_controls() {
  SolveControls c;
  c.eps_schedule = {};
  return c;
}

double observed_order(double coarse, double fine) {
  return std::log2(coarse / fine);
}

}  // namespace

TEST_CASE("bernoulli function") {
  CHECK(bernoulli(0.0) == 1.0);
  CHECK(bernoulli(1.0) == doctest::Approx(1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-14));
  CHECK(bernoulli(-2.0) == doctest::Approx(2.0 + bernoulli(2.0)).epsilon(1e-14));
  CHECK(bernoulli(1e-10) == doctest::Approx(1.0 - 5e-11).epsilon(1e-15));
  CHECK(bernoulli(800.0) >= 0.0);
  CHECK(bernoulli(800.0) < 1e-300);
  for (double x : {-3.0, -1e-3, 1e-9, 0.5, 4.0}) {
    const double h = 1e-6;
    const double fd = (bernoulli(x + h) - bernoulli(x - h)) / (2 * h);
    CHECK(bernoulli_derivative(x) == doctest::Approx(fd).epsilon(1e-7));
  }
  CHECK(bernoulli_derivative(0.0) == doctest::Approx(-0.5));
}

TEST_CASE("continuity fluxes vanish on the boundary faces") {
  const Grid g(16, 1.0);
  const Field rho(g, 1.0);
  const Field u = Field::from_function(g, [](double x) { return x; });
  const FaceFluxes f = continuity_fluxes(rho, u, 0.1);
  REQUIRE(f.total.size() == 17);
  CHECK(f.total.front() == 0.0);
  CHECK(f.total.back() == 0.0);
  // Constant rho: no diffusive part, so total equals advective.
  for (std::size_t j = 1; j < 16; ++j) {
    CHECK(f.total[j] == doctest::Approx(f.advective[j]).epsilon(1e-12));
  }
}

TEST_CASE("continuity solve with zero velocity returns the mean density") {
  const ProblemSpec s = unforced_problem(64);
  const Field rho = solve_continuity(Field(s.grid), s.eps, s);
  CHECK(max_rel_dev(rho, Field(s.grid, s.rho0()), 1.0) <= 1e-13);
}

TEST_CASE("continuity solve conserves mass and positivity for rough velocity") {
  ProblemSpec s = forced_problem(128, 0.1, 1e-3);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> d(-50.0, 50.0);
  for (int trial = 0; trial < 5; ++trial) {
    Field u(s.grid);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = d(rng);
    for (double eps : {1e-1, 1e-2, 1e-3}) {
      const Field rho = solve_continuity(u, eps, s);
      CHECK(std::fabs(integrate(rho) - s.m1) / s.m1 <= 1e-12);
      for (double v : rho.values()) CHECK(v >= 0.0);
    }
  }
}

TEST_CASE("constant state is a fixed point of one Picard step") {
  const ProblemSpec s = unforced_problem(128);
  const State c = constant_state(s);
  SolveControls ctl;
  ctl.damping = 1.0;
  const PicardResult r = picard_step(c, 1.0, s.eps, s, ctl);
  CHECK(max_rel_dev(r.state.rho, c.rho, 1.0) <= 1e-12);
  CHECK(max_abs(r.state.u) <= 1e-12);
  CHECK(max_rel_dev(r.state.mu, c.mu, 1.0) <= 1e-12);
  CHECK(max_rel_dev(r.state.c, c.c, 1.0) <= 1e-12);
  CHECK(r.residual <= 1e-12);
  CHECK(r.mass_error <= 1e-14);
}

TEST_CASE("damping one equals the undamped composition") {
  const ProblemSpec s = forced_problem(64, 0.1);
  const State start = constant_state(s);
  SolveControls ctl;
  ctl.damping = 1.0;
  const PicardResult r = picard_step(start, 0.5, s.eps, s, ctl);

  const FluidSolution fl = solve_fluid(start, 0.5, s.eps, s);
  State next{solve_continuity(fl.u, s.eps, s), fl.u, start.mu, start.c};
  next.mu = solve_mu(next, 0.5, s.eps, s).field;
  next.c = solve_c(next, 0.5, s.eps, s).field;
  CHECK(max_abs(r.state.rho - next.rho) == 0.0);
  CHECK(max_abs(r.state.u - next.u) == 0.0);
  CHECK(max_abs(r.state.mu - next.mu) == 0.0);
  CHECK(max_abs(r.state.c - next.c) == 0.0);
}

TEST_CASE("damped step blends with the previous iterate") {
  const ProblemSpec s = forced_problem(64, 0.1);
  const State start = constant_state(s);
  SolveControls full, half;
  full.damping = 1.0;
  half.damping = 0.5;
  const State a = picard_step(start, 1.0, s.eps, s, full).state;
  const State b = picard_step(start, 1.0, s.eps, s, half).state;
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    CHECK(b.c[i] == doctest::Approx(0.5 * (a.c[i] + start.c[i])).epsilon(1e-14));
    CHECK(b.rho[i] == doctest::Approx(0.5 * (a.rho[i] + start.rho[i])).epsilon(1e-14));
  }
}

TEST_CASE("fluid Newton converges in a handful of iterations") {
  const ProblemSpec s = forced_problem(128, 0.1);
  const FluidSolution fl = solve_fluid(constant_state(s), 1.0, s.eps, s);
  CHECK(fl.newton_iterations >= 1);
  CHECK(fl.newton_iterations <= 10);
  CHECK(std::fabs(integrate(fl.rho) - s.m1) / s.m1 <= 1e-12);
  // The fluid pair satisfies the lagged momentum equation.
  const State st{fl.rho, fl.u, constant_state(s).mu, constant_state(s).c};
  const Field u2 = solve_momentum(st, 1.0, s.eps, s);
  CHECK(max_abs(u2 - fl.u) <= 1e-9 * std::max(1e-12, max_abs(fl.u)) + 1e-14);
}

TEST_CASE("unforced solve recovers the constant state") {
  const ProblemSpec s = unforced_problem(256);
  const SolveResult r = continuation_solve(s, SolveControls{});
  const State c = constant_state(s);
  CHECK(r.log.converged());
  CHECK(max_rel_dev(r.state.rho, c.rho, 1.0) <= 1e-8);
  CHECK(max_abs(r.state.u) <= 1e-8);
  CHECK(max_rel_dev(r.state.mu, c.mu, 1.0) <= 1e-8);
  CHECK(max_rel_dev(r.state.c, c.c, 1.0) <= 1e-8);
  CHECK(r.log.max_mass_error() <= 1e-12);
}

TEST_CASE("forced solve conserves mass at every iterate and meets m2") {
  const ProblemSpec s = forced_problem(128, 0.1);
  const SolveResult r = continuation_solve(s, SolveControls{});
  REQUIRE(r.log.converged());
  CHECK(r.log.max_mass_error() <= 1e-12);
  for (const StageLog& st : r.log.stages) {
    CHECK(st.residuals.size() == st.mass_errors.size());
    CHECK(st.converged);
  }
  const ConstraintErrors e = constraint_check(r.state, s, s.eps);
  CHECK(e.err_m1 / s.m1 <= 1e-12);
  CHECK(e.err_m2 <= 1e-8);
  CHECK(r.proj_mu <= 1e-10);
  CHECK(r.proj_c <= 1e-10);
  for (double v : r.state.rho.values()) CHECK(v > 0.0);
}

TEST_CASE("stage bookkeeping follows the schedules") {
  const ProblemSpec s = forced_problem(64, 0.1, 1e-3);
  const SolveControls ctl;
  const std::vector<double> e = eps_stages(s, ctl);
  CHECK(e == std::vector<double>{1e-1, 1e-2, 1e-3});
  ProblemSpec t = s;
  t.eps = 5e-2;
  CHECK(eps_stages(t, ctl) == std::vector<double>{1e-1, 5e-2});
  const SolveResult r = continuation_solve(t, ctl);
  REQUIRE(r.log.stages.size() == 5);
  CHECK(r.log.stages[0].sigma == 0.25);
  CHECK(r.log.stages[0].eps == 1e-1);
  CHECK(r.log.stages[3].sigma == 1.0);
  CHECK(r.log.stages[4].eps == 5e-2);
}

TEST_CASE("residuals decrease after the transient") {
  const ProblemSpec s = forced_problem(128, 0.1);
  const SolveResult r = continuation_solve(s, SolveControls{});
  for (const StageLog& st : r.log.stages) {
    const auto& res = st.residuals;
    for (std::size_t k = 6; k < res.size(); ++k) {
      INFO("stage sigma=" << st.sigma << " eps=" << st.eps << " k=" << k);
      CHECK(res[k] <= res[k - 1] * (1.0 + 1e-6) + 1e-13);
    }
  }
}

TEST_CASE("homotopy path does not change the solution") {
  const ProblemSpec s = forced_problem(64, 0.1);
  SolveControls one;
  one.sigma_schedule = {1.0};
  one.tol_rel = 1e-10;
  SolveControls four = one;
  four.sigma_schedule = {0.25, 0.5, 0.75, 1.0};
  const State a = continuation_solve(s, one).state;
  const State b = continuation_solve(s, four).state;
  CHECK(max_rel_dev(a.c, b.c, 1.0) <= 1e-8);
  CHECK(max_rel_dev(a.mu, b.mu, 1.0) <= 1e-8);
  CHECK(max_rel_dev(a.rho, b.rho, 1.0) <= 1e-8);
}

TEST_CASE("response is linear in small forcing") {
  SolveControls ctl;
  ctl.tol_rel = 1e-11;
  const ProblemSpec a = forced_problem(64, 1e-3);
  const ProblemSpec b = forced_problem(64, 5e-4);
  const State sa = continuation_solve(a, ctl).state;
  const State sb = continuation_solve(b, ctl).state;
  const State c0 = constant_state(a);
  const double da = max_abs(sa.c - c0.c);
  const double db = max_abs(sb.c - c0.c);
  REQUIRE(db > 0.0);
  CHECK(da / db == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("warm start from a converged state converges at once") {
  const ProblemSpec s = forced_problem(64, 0.1);
  SolveControls ctl;
  ctl.sigma_schedule = {1.0};
  ctl.eps_schedule = {};
  const SolveResult r = continuation_solve(s, ctl);
  const SolveResult again = continuation_solve(s, ctl, r.state);
  CHECK(again.log.total_iterations() <= 3);
  CHECK(again.log.converged());
}

TEST_CASE("max_picard exhaustion marks the stage unconverged") {
  const ProblemSpec s = forced_problem(64, 0.1);
  SolveControls ctl;
  ctl.max_picard = 2;
  const SolveResult r = continuation_solve(s, ctl);
  CHECK_FALSE(r.log.converged());
  CHECK(r.log.stages.back().residuals.size() == 2);
}

TEST_CASE("controls are validated") {
  SolveControls c;
  c.sigma_schedule = {0.5};
  CHECK_THROWS_AS(c.validate(), InvalidParameter);
  c = SolveControls{};
  c.sigma_schedule = {0.5, 0.5, 1.0};
  CHECK_THROWS_AS(c.validate(), InvalidParameter);
  c = SolveControls{};
  c.damping = 0.0;
  CHECK_THROWS_AS(c.validate(), InvalidParameter);
  c = SolveControls{};
  c.eps_schedule = {1e-2, 1e-1};
  CHECK_THROWS_AS(c.validate(), InvalidParameter);
  c = SolveControls{};
  c.max_picard = 0;
  CHECK_THROWS_AS(c.validate(), InvalidParameter);
  ProblemSpec s = unforced_problem(32);
  s.m2 = s.m1;
  CHECK_THROWS_WITH_AS(continuation_solve(s, SolveControls{}),
                       doctest::Contains("m2"), InvalidParameter);
  s = unforced_problem(32);
  s.g1 = Field(Grid(16, 1.0));
  CHECK_THROWS_AS(s.validate(), InvalidParameter);
}

TEST_CASE("individual operators recover a manufactured solution") {
  std::vector<double> e_rho, e_u, e_mu, e_c;
  for (int n : {32, 64, 128, 256}) {
    const ManufacturedProblem m = mms(n);
    const double eps = m.spec.eps;
    e_rho.push_back(relative_l2_error(solve_continuity(m.exact.u, eps, m.spec),
                                      m.exact.rho));
    e_u.push_back(relative_l2_error(solve_momentum(m.exact, 1.0, eps, m.spec),
                                    m.exact.u));
    e_mu.push_back(
        relative_l2_error(solve_mu(m.exact, 1.0, eps, m.spec).field, m.exact.mu));
    e_c.push_back(
        relative_l2_error(solve_c(m.exact, 1.0, eps, m.spec).field, m.exact.c));
  }
  for (std::size_t k = 1; k < e_u.size(); ++k) {
    INFO("refinement " << k);
    CHECK(observed_order(e_rho[k - 1], e_rho[k]) >= 0.9);
    CHECK(observed_order(e_u[k - 1], e_u[k]) >= 1.9);
    CHECK(observed_order(e_mu[k - 1], e_mu[k]) >= 1.9);
    CHECK(observed_order(e_c[k - 1], e_c[k]) >= 1.9);
  }
}

TEST_CASE("full manufactured solve converges at second order") {
  std::vector<double> e_u, e_mu, e_c, e_rho;
  for (int n : {32, 64, 128}) {
    const ManufacturedProblem m = mms(n);
    const SolveResult r = continuation_solve(m.spec, mms_controls());
    REQUIRE(r.log.converged());
    CHECK(r.log.max_mass_error() <= 1e-12);
    e_rho.push_back(relative_l2_error(r.state.rho, m.exact.rho));
    e_u.push_back(relative_l2_error(r.state.u, m.exact.u));
    e_mu.push_back(relative_l2_error(r.state.mu, m.exact.mu));
    e_c.push_back(relative_l2_error(r.state.c, m.exact.c));
  }
  for (std::size_t k = 1; k < e_u.size(); ++k) {
    CHECK(observed_order(e_rho[k - 1], e_rho[k]) >= 0.9);
    CHECK(observed_order(e_u[k - 1], e_u[k]) >= 1.9);
    CHECK(observed_order(e_mu[k - 1], e_mu[k]) >= 1.9);
    CHECK(observed_order(e_c[k - 1], e_c[k]) >= 1.9);
  }
}
