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

#ifndef FHCH_PROBLEM_HPP_
#define FHCH_PROBLEM_HPP_

#include <optional>
#include <vector>

#include "fhch/fluid_params.hpp"
#include "fhch/mesh.hpp"
#include "fhch/potential.hpp"

namespace fhch {

/// Additive right-hand sides for manufactured-solution runs, one per
/// equation (continuity, momentum, chemical potential, concentration).
struct MmsSources {
  Field rho;
  Field u;
  Field mu;
  Field c;
};

struct ProblemSpec {
  Grid grid{64, 1.0};
  PotentialParams potential;
  FluidParams fluid;
  double m1 = 1.0;
  double m2 = 0.0;
  Field g1{grid};
  Field g2{grid};
  /// Target value of the approximation parameter (final continuation stage).
  double eps = 1e-3;
  std::optional<MmsSources> mms;

  /// Checks m1 > 0, -m1 < m2 < m1, eps in (0,1), field sizes and the
  /// potential/fluid invariants. Throws InvalidParameter.
  void validate() const;

  double rho0() const noexcept { return m1 / grid.length(); }
  /// c0 with rho0 c0 = m2 / |Omega|.
  double c0() const noexcept { return m2 / m1; }
};

/// The quadruple (rho, u, mu, c).
struct State {
  Field rho;
  Field u;
  Field mu;
  Field c;
};

/// (rho0, 0, dF_delta(c0), c0): exact solution of the unforced system.
State constant_state(const ProblemSpec& spec);

struct SolveControls {
  std::vector<double> sigma_schedule{0.25, 0.5, 0.75, 1.0};
  double damping = 0.5;
  int max_picard = 500;
  double tol_rel = 1e-8;
  /// Continuation waypoints in eps; entries above ProblemSpec::eps are
  /// visited in order before the target eps itself.
  std::vector<double> eps_schedule{1e-1, 1e-2, 1e-3};

  void validate() const;
};

/// Effective eps stages: schedule entries strictly above spec.eps, then
/// spec.eps.
std::vector<double> eps_stages(const ProblemSpec& spec,
                               const SolveControls& controls);

}  // namespace fhch

#endif  // FHCH_PROBLEM_HPP_
