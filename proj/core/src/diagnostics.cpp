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

#include "fhch/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "fhch/errors.hpp"
#include "fhch/format.hpp"
#include "fhch/potential.hpp"

namespace fhch {

double total_energy(const State& s, const ProblemSpec& spec) {
  const double h = spec.grid.spacing();
  double e = 0.0;
  for (std::size_t i = 0; i < s.rho.size(); ++i) {
    e += (0.5 * s.rho[i] * s.u[i] * s.u[i] +
          density_free_energy(s.rho[i], s.c[i], spec.fluid, spec.potential)) *
         h;
  }
  return e + 0.5 * face_dirichlet_energy(s.c, Boundary::kNeumann);
}

EnergyInequality energy_inequality(const State& s, const ProblemSpec& spec) {
  EnergyInequality ei;
  ei.lhs = spec.fluid.lame() *
               face_dirichlet_energy(s.u, Boundary::kDirichlet0) +
           face_dirichlet_energy(s.mu, Boundary::kNeumann);
  const double h = spec.grid.spacing();
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    ei.rhs += (s.rho[i] * spec.g1[i] + spec.g2[i]) * s.u[i] * h;
  }
  ei.slack = ei.rhs - ei.lhs;
  return ei;
}

ConstraintErrors constraint_check(const State& s, const ProblemSpec& spec,
                                  double eps) {
  const int n = spec.grid.n_cells();
  const double h = spec.grid.spacing();
  const double rho0 = spec.rho0();
  ConstraintErrors out;
  double defect = 0.0, grad = 0.0;
  for (int i = 0; i < n; ++i) {
    out.mass1 += s.rho[i] * h;
    out.mass2 += s.rho[i] * s.c[i] * h;
    defect += (rho0 - s.rho[i]) * s.c[i] * h;
  }
  for (int j = 1; j < n; ++j) {
    grad += (s.rho[j] - s.rho[j - 1]) * (s.c[j] - s.c[j - 1]) / h;
  }
  out.err_m1 = std::fabs(out.mass1 - spec.m1);
  out.err_m2 =
      std::fabs(out.mass2 - spec.m2 - eps * defect + eps * eps * eps * grad);
  return out;
}

double bound_violation(const State& s, double tau) {
  if (!(tau > 0.0)) {
    throw InvalidParameter("bound_violation: tau must be positive");
  }
  const double h = s.c.grid().spacing();
  double m = 0.0;
  for (std::size_t i = 0; i < s.c.size(); ++i) {
    if (std::fabs(s.c[i]) > 1.0 && s.rho[i] > tau) m += h;
  }
  return m;
}

double continuity_residual(const State& s) {
  const int n = s.rho.grid().n_cells();
  const double h = s.rho.grid().spacing();
  double sum = 0.0;
  for (int k = 1; k + 1 < n; ++k) {
    const double w = -(s.rho[k + 1] * s.u[k + 1] - s.rho[k - 1] * s.u[k - 1]) /
                     (2.0 * h);
    sum += w * w * h;
  }
  const double scale = l2_norm(s.rho);
  return scale > 0.0 ? std::sqrt(sum) / scale : 0.0;
}

double art_pressure_norm(const State& s, const ProblemSpec& spec) {
  const double h = spec.grid.spacing();
  double sum = 0.0;
  for (std::size_t i = 0; i < s.rho.size(); ++i) {
    sum += artificial_pressure(s.rho[i], spec.potential.delta, spec.fluid) * h;
  }
  return sum;
}

double lp_norm(const Field& f, double p) {
  const double h = f.grid().spacing();
  double sum = 0.0;
  for (double v : f.values()) sum += std::pow(std::fabs(v), p) * h;
  return std::pow(sum, 1.0 / p);
}

NormSet norms(const State& s, const ProblemSpec& spec) {
  const double g = spec.fluid.gamma;
  NormSet out;
  out.rho_lp = {{"rho_L6_5", lp_norm(s.rho, 1.2)},
                {"rho_L3_2", lp_norm(s.rho, 1.5)},
                {"rho_Lgamma", lp_norm(s.rho, g)},
                {"rho_L2", lp_norm(s.rho, 2.0)},
                {"rho_Ls", lp_norm(s.rho, 3.0 - 3.0 / g)}};
  out.grad_u = std::sqrt(face_dirichlet_energy(s.u, Boundary::kDirichlet0));
  out.grad_mu = std::sqrt(face_dirichlet_energy(s.mu, Boundary::kNeumann));
  out.grad_c = std::sqrt(face_dirichlet_energy(s.c, Boundary::kNeumann));
  return out;
}

double default_tau(const ProblemSpec& spec) { return 1e-6 * spec.rho0(); }

DiagnosticsReport diagnose(const State& s, const ProblemSpec& spec,
                           double proj_mu, double proj_c) {
  return diagnose(s, spec, proj_mu, proj_c, default_tau(spec));
}

DiagnosticsReport diagnose(const State& s, const ProblemSpec& spec,
                           double proj_mu, double proj_c, double tau) {
  DiagnosticsReport r;
  r.total_energy = total_energy(s, spec);
  r.ei = energy_inequality(s, spec);
  r.constraints = constraint_check(s, spec, spec.eps);
  r.art_pressure_norm = art_pressure_norm(s, spec);
  r.norms = norms(s, spec);
  r.bound_violation = bound_violation(s, tau);
  r.continuity_residual = continuity_residual(s);
  r.proj_mu = proj_mu;
  r.proj_c = proj_c;
  return r;
}

DiagnosticsReport nan_report() {
  const double q = std::numeric_limits<double>::quiet_NaN();
  DiagnosticsReport r;
  r.total_energy = q;
  r.ei = {q, q, q};
  r.constraints = {q, q, q, q};
  r.art_pressure_norm = q;
  r.norms.rho_lp = {{"rho_L6_5", q},
                    {"rho_L3_2", q},
                    {"rho_Lgamma", q},
                    {"rho_L2", q},
                    {"rho_Ls", q}};
  r.norms.grad_u = r.norms.grad_mu = r.norms.grad_c = q;
  r.bound_violation = r.continuity_residual = r.proj_mu = r.proj_c = q;
  return r;
}

std::vector<std::pair<std::string, double>> report_fields(
    const DiagnosticsReport& r) {
  std::vector<std::pair<std::string, double>> f = {
      {"total_energy", r.total_energy},
      {"ei_lhs", r.ei.lhs},
      {"ei_rhs", r.ei.rhs},
      {"ei_slack", r.ei.slack},
      {"mass1", r.constraints.mass1},
      {"mass2", r.constraints.mass2},
      {"err_m1", r.constraints.err_m1},
      {"err_m2", r.constraints.err_m2},
      {"art_pressure_norm", r.art_pressure_norm}};
  for (const auto& kv : r.norms.rho_lp) f.push_back(kv);
  f.insert(f.end(), {{"grad_u", r.norms.grad_u},
                     {"grad_mu", r.norms.grad_mu},
                     {"grad_c", r.norms.grad_c},
                     {"bound_violation", r.bound_violation},
                     {"continuity_residual", r.continuity_residual},
                     {"proj_mu", r.proj_mu},
                     {"proj_c", r.proj_c}});
  return f;
}

void write_key_value(std::ostream& out, const DiagnosticsReport& r) {
  for (const auto& [k, v] : report_fields(r)) {
    out << k << '=' << format_sci(v) << '\n';
  }
}

}  // namespace fhch
