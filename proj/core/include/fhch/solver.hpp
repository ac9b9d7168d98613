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
// Discrete stationary system on (0, L), all unknowns at cell centres:
//
//   eps^2 rho + (F)' = eps^2 rho0                         continuity
//   lame u'' = sigma R1(rho, u; mu~, c~)                  momentum
//   mu''     = sigma (eps rho c~ + A(rho, u; c~) - eps rho0 c0)
//   c''      = sigma rho (dF(c~) - mu)
//
// F is an exponentially fitted (Scharfetter-Gummel) face flux for
// rho u - eps^4 rho'. It keeps the continuity matrix an M-matrix with column
// sums eps^2, so rho >= 0 and sum(rho) h = m1 up to roundoff.
//
// The continuity/momentum pair is solved jointly by Newton with (mu, c)
// frozen; mu and c are then updated by Neumann solves plus the two integral
// normalizations.

#ifndef FHCH_SOLVER_HPP_
#define FHCH_SOLVER_HPP_

#include <optional>
#include <string>
#include <vector>

#include "fhch/mesh.hpp"
#include "fhch/problem.hpp"

namespace fhch {

/// Bernoulli function x / (e^x - 1) and its derivative.
double bernoulli(double x);
double bernoulli_derivative(double x);

/// Face fluxes at the n+1 faces (boundary entries are 0).
struct FaceFluxes {
  /// Total continuity flux (advection minus eps^4 diffusion).
  std::vector<double> total;
  /// Advective part: total + eps^4 (rho_R - rho_L) / h.
  std::vector<double> advective;
};

FaceFluxes continuity_fluxes(const Field& rho, const Field& u, double eps);

/// Solves the continuity equation for rho given u (Neumann for rho).
/// Throws SingularSystemError if the assembly is degenerate.
Field solve_continuity(const Field& u, double eps, const ProblemSpec& spec);

/// Linear momentum solve with every nonlinear term lagged at `state`.
Field solve_momentum(const State& state, double sigma, double eps,
                     const ProblemSpec& spec);

/// Momentum residual R1 (without the viscous term) at `state`; mu and c are
/// read from `state` as well.
Field momentum_forcing(const State& state, double eps,
                       const ProblemSpec& spec);

struct FluidSolution {
  Field rho;
  Field u;
  int newton_iterations = 0;
};

/// Coupled continuity + momentum solve for (rho, u) with mu, c frozen at
/// `state`, starting from state.rho, state.u. Throws DivergenceError if
/// Newton fails.
FluidSolution solve_fluid(const State& state, double sigma, double eps,
                          const ProblemSpec& spec);

struct NeumannSolution {
  Field field;
  /// |mean(rhs)| relative to the size of its terms before projection.
  double projection = 0.0;
};

/// mu from the state's rho, u, c (c is the lagged concentration).
NeumannSolution solve_mu(const State& state, double sigma, double eps,
                         const ProblemSpec& spec);

/// c from the state's rho, mu and lagged c.
NeumannSolution solve_c(const State& state, double sigma, double eps,
                        const ProblemSpec& spec);

struct PicardResult {
  State state;
  double residual = 0.0;
  double update = 0.0;
  double proj_mu = 0.0;
  double proj_c = 0.0;
  /// |integrate(rho) - m1| / m1 of the returned state.
  double mass_error = 0.0;
  int newton_iterations = 0;
};

PicardResult picard_step(const State& state, double sigma, double eps,
                         const ProblemSpec& spec,
                         const SolveControls& controls);

struct StageLog {
  double sigma = 1.0;
  double eps = 0.0;
  bool converged = false;
  std::vector<double> residuals;
  std::vector<double> mass_errors;
};

struct ConvergenceLog {
  std::vector<StageLog> stages;

  int total_iterations() const;
  double max_mass_error() const;
  bool converged() const;
};

struct SolveResult {
  State state;
  ConvergenceLog log;
  double proj_mu = 0.0;
  double proj_c = 0.0;
};

/// sigma continuation at the first eps stage, then eps continuation at
/// sigma = 1. Each stage warm-starts from the previous one. A diverging
/// stage is retried once through its midpoint before DivergenceError is
/// rethrown with the stage attached.
SolveResult continuation_solve(const ProblemSpec& spec,
                               const SolveControls& controls,
                               const std::optional<State>& initial = {});

}  // namespace fhch

#endif  // FHCH_SOLVER_HPP_
