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
//
// Invariant suite run by `fhch check`. Thresholds are the documented ones;
// every check reports the measured quantity next to its verdict.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "commands.hpp"

namespace fhch::cli {

namespace {

std::string sci(double v) { return format_sci(v); }

double rel_gap(double a, double b) {
  return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1.0});
}

CheckResult c2_junctions(const PotentialParams& base) {
  std::vector<double> deltas(kDeltaTestGrid.begin(), kDeltaTestGrid.end());
  deltas.push_back(base.delta);
  double worst = 0.0;
  for (double d : deltas) {
    PotentialParams p = base;
    p.delta = d;
    const std::array<std::pair<double, Piece>, 3> knots = {
        std::pair{1.0 - d, Piece::kCore}, std::pair{1.0, Piece::kQuadratic},
        std::pair{1.0 + d, Piece::kCubic}};
    for (const auto& [k, left] : knots) {
      const Piece right = static_cast<Piece>(static_cast<int>(left) + 1);
      const PieceValues a = evaluate_piece(left, k, p);
      const PieceValues b = evaluate_piece(right, k, p);
      worst = std::max({worst, rel_gap(a.f, b.f), rel_gap(a.fp, b.fp),
                        rel_gap(a.fpp, b.fpp)});
    }
  }
  return {"potential.c2_junctions", worst <= 1e-9,
          "max relative jump " + sci(worst) + " (limit 1e-9)"};
}

CheckResult symmetry(const PotentialParams& p) {
  double worst = 0.0;
  for (double c : linspace(0.0, 3.0, 3001)) {
    worst = std::max({worst, std::fabs(f2_delta(c, p) - f2_delta(-c, p)),
                      std::fabs(f2_delta_prime(c, p) + f2_delta_prime(-c, p)),
                      std::fabs(f2_delta_prime2(c, p) -
                                f2_delta_prime2(-c, p))});
  }
  return {"potential.symmetry", worst == 0.0,
          "max asymmetry " + sci(worst) + " (must be 0)"};
}

CheckResult sign_property(const PotentialParams& p) {
  const double cs = constants(p).c_star;
  int bad = 0;
  for (double c : linspace(-5.0, 5.0, 10000)) {
    if (std::fabs(c) > cs && !(dF_delta(c, p) * c > 0.0)) ++bad;
  }
  return {"potential.sign_beyond_cstar", bad == 0,
          std::to_string(bad) + " grid points with dF(c) c <= 0 for |c| > c*"};
}

CheckResult convexity(const PotentialParams& p) {
  const double sp = constants(p).spinodal;
  double worst = 0.0;
  for (double c : linspace(sp, 1.0 + p.delta, 10000)) {
    worst = std::min(worst, d2F_delta(c, p));
  }
  return {"potential.convex_beyond_spinodal", worst >= -1e-12,
          "min f2'' - thetac on [spinodal, 1+delta] " + sci(worst)};
}

CheckResult derivative_order(const PotentialParams& p) {
  // Central differences at points away from the knots.
  const std::array<double, 2> pts = {0.3, 1.0 + 0.5 * p.delta};
  double worst = 10.0;
  for (double c : pts) {
    double prev = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double h = 1e-3 * std::pow(0.5, k) * p.delta;
      const double fd =
          (f2_delta(c + h, p) - f2_delta(c - h, p)) / (2.0 * h);
      const double err = std::fabs(fd - f2_delta_prime(c, p));
      if (k > 0 && err > 1e-13 && prev > 1e-13) {
        worst = std::min(worst, std::log2(prev / err));
      }
      prev = err;
    }
  }
  return {"potential.derivative_order", worst >= 1.9,
          "min observed order " + sci(worst) + " (limit 1.9)"};
}

CheckResult mesh_order(double length) {
  std::vector<double> err;
  for (int n : {32, 64, 128}) {
    const Grid g(n, length);
    const double k = std::numbers::pi / length;
    const Field f =
        Field::from_function(g, [&](double x) { return std::cos(k * x); });
    const Field rhs = -(k * k) * f;
    Field exact = f;
    const double m = mean(exact);
    for (std::size_t i = 0; i < exact.size(); ++i) exact[i] -= m;
    const Field x = laplacian_solve(rhs - Field(g, mean(rhs)),
                                    Boundary::kNeumann);
    err.push_back(max_abs(x - exact));
  }
  const double order = std::log2(err[1] / err[2]);
  return {"mesh.neumann_poisson_order", order >= 1.9,
          "observed order " + sci(order) + " (limit 1.9)"};
}

CheckResult mesh_sbp(double length) {
  const Grid g(64, length);
  const Field f = Field::from_function(
      g, [&](double x) { return std::sin(std::numbers::pi * x / length); });
  const Field q = Field::from_function(
      g, [&](double x) { return std::exp(x / length); });
  const double lhs = integrate(hadamard(f, laplacian(f, Boundary::kDirichlet0)));
  const double gap =
      std::fabs(lhs + face_dirichlet_energy(f, Boundary::kDirichlet0));
  const double tel =
      std::fabs(integrate(divergence(q, Boundary::kDirichlet0)));
  const double scale = face_dirichlet_energy(f, Boundary::kDirichlet0);
  const bool ok = gap <= 1e-12 * scale && tel <= 1e-12 * max_abs(q);
  return {"mesh.summation_by_parts", ok,
          "|sum f Lf + energy| = " + sci(gap) + ", |sum div q| = " + sci(tel)};
}

CheckResult constant_state_check(const RunConfig& cfg) {
  RunConfig c = cfg;
  c.g1 = {};
  c.g2 = {};
  c.mms_enabled = false;
  const ProblemSpec spec = c.problem();
  try {
    const SolveResult r = continuation_solve(spec, cfg.controls);
    const State ref = constant_state(spec);
    const double dev = std::max(
        {relative_l2_error(r.state.rho, ref.rho), max_abs(r.state.u),
         max_abs(r.state.mu - ref.mu) / std::max(1.0, max_abs(ref.mu)),
         max_abs(r.state.c - ref.c) / std::max(1.0, max_abs(ref.c))});
    return {"solver.constant_state", dev <= 1e-8 && r.log.converged(),
            "max deviation " + sci(dev) + " (limit 1e-8)"};
  } catch (const std::exception& e) {
    return {"solver.constant_state", false, e.what()};
  }
}

CheckResult constraints_check(const RunConfig& cfg) {
  const ProblemSpec spec = cfg.problem();
  try {
    const SolveResult r = continuation_solve(spec, cfg.controls);
    const ConstraintErrors e = constraint_check(r.state, spec, spec.eps);
    const double m1 = e.err_m1 / spec.m1;
    const double m2 = e.err_m2 / std::max(1.0, std::fabs(spec.m2));
    const bool ok = r.log.converged() && m1 <= 1e-12 &&
                    m2 <= cfg.controls.tol_rel &&
                    r.log.max_mass_error() <= 1e-12;
    return {"solver.constraints", ok,
            "err_m1/m1 " + sci(m1) + ", err_m2 " + sci(m2) +
                ", max iterate mass error " + sci(r.log.max_mass_error())};
  } catch (const std::exception& e) {
    return {"solver.constraints", false, e.what()};
  }
}

}  // namespace

std::vector<CheckResult> run_checks(const RunConfig& cfg) {
  return {c2_junctions(cfg.potential),  symmetry(cfg.potential),
          sign_property(cfg.potential), convexity(cfg.potential),
          derivative_order(cfg.potential), mesh_order(cfg.length),
          mesh_sbp(cfg.length),         constant_state_check(cfg),
          constraints_check(cfg)};
}

}  // namespace fhch::cli
