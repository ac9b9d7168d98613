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

#include "fhch/problem.hpp"

#include <cmath>

#include "fhch/errors.hpp"

namespace fhch {

namespace {

void check_field(const Field& f, const Grid& grid, const char* key) {
  if (!(f.grid() == grid)) {
    throw InvalidParameter(std::string(key) + " does not match the grid");
  }
  if (!f.all_finite()) {
    throw InvalidParameter(std::string(key) + " has non-finite values");
  }
}

}  // namespace

void ProblemSpec::validate() const {
  potential.validate();
  fluid.validate();
  if (!std::isfinite(m1) || m1 <= 0.0) {
    throw InvalidParameter("problem.m1 must be positive");
  }
  if (!std::isfinite(m2) || m2 <= -m1 || m2 >= m1) {
    throw InvalidParameter("problem.m2 must lie in (-m1, m1)");
  }
  if (!std::isfinite(eps) || eps <= 0.0 || eps >= 1.0) {
    throw InvalidParameter("problem.eps must lie in (0, 1)");
  }
  check_field(g1, grid, "forcing.g1");
  check_field(g2, grid, "forcing.g2");
  if (mms) {
    check_field(mms->rho, grid, "mms source rho");
    check_field(mms->u, grid, "mms source u");
    check_field(mms->mu, grid, "mms source mu");
    check_field(mms->c, grid, "mms source c");
  }
}

State constant_state(const ProblemSpec& spec) {
  const double c0 = spec.c0();
  return State{Field(spec.grid, spec.rho0()), Field(spec.grid, 0.0),
               Field(spec.grid, dF_delta(c0, spec.potential)),
               Field(spec.grid, c0)};
}

void SolveControls::validate() const {
  if (sigma_schedule.empty() || sigma_schedule.back() != 1.0) {
    throw InvalidParameter("solver.sigma_schedule must end at 1");
  }
  double prev = 0.0;
  for (double s : sigma_schedule) {
    if (!(s > prev) || s > 1.0) {
      throw InvalidParameter(
          "solver.sigma_schedule must be increasing within (0, 1]");
    }
    prev = s;
  }
  prev = 1.0;
  for (double e : eps_schedule) {
    if (!(e < prev) || e <= 0.0) {
      throw InvalidParameter(
          "solver.eps_schedule must be decreasing within (0, 1)");
    }
    prev = e;
  }
  if (!(damping > 0.0) || damping > 1.0) {
    throw InvalidParameter("solver.damping must lie in (0, 1]");
  }
  if (max_picard < 1) {
    throw InvalidParameter("solver.max_picard must be positive");
  }
  if (!(tol_rel > 0.0)) {
    throw InvalidParameter("solver.tol_rel must be positive");
  }
}

std::vector<double> eps_stages(const ProblemSpec& spec,
                               const SolveControls& controls) {
  std::vector<double> out;
  for (double e : controls.eps_schedule) {
    if (e > spec.eps) out.push_back(e);
  }
  out.push_back(spec.eps);
  return out;
}

}  // namespace fhch
