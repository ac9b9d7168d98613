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

#include "fhch/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "banded.hpp"
#include "fhch/errors.hpp"
#include "fhch/potential.hpp"

namespace fhch {

namespace {

using Stencil = std::array<std::pair<int, double>, 2>;

// Central first difference at cell i with ghost folding.
Stencil central(int i, int n, double h, Boundary bc) {
  const double w = 0.5 / h;
  const double mirror = bc == Boundary::kNeumann ? 1.0 : -1.0;
  Stencil s;
  s[0] = i + 1 < n ? std::pair{i + 1, w} : std::pair{i, mirror * w};
  s[1] = i > 0 ? std::pair{i - 1, -w} : std::pair{i, -mirror * w};
  return s;
}

double apply_stencil(const Stencil& s, const Field& f) {
  return s[0].second * f[s[0].first] + s[1].second * f[s[1].first];
}

double pi_total(double rho, double delta, const FluidParams& fp) {
  return artificial_pressure(rho, delta, fp) + pressure(rho, fp);
}

double pi_total_derivative(double rho, double delta, const FluidParams& fp) {
  return artificial_pressure_derivative(rho, delta, fp) +
         pressure_derivative(rho, fp);
}

// Capillary coefficient (dF(c) - mu) c' at every cell.
Field capillary(const Field& mu, const Field& c, const PotentialParams& p) {
  const Field dc = gradient(c, Boundary::kNeumann);
  Field k(c.grid());
  for (std::size_t i = 0; i < k.size(); ++i) {
    k[i] = (dF_delta(c[i], p) - mu[i]) * dc[i];
  }
  return k;
}

Field zero_or(const std::optional<MmsSources>& mms, Field MmsSources::*member,
              const Grid& g) {
  return mms ? (*mms).*member : Field(g);
}

struct FaceCoefficients {
  double a = 0.0;      // dF/drho_L
  double b = 0.0;      // dF/drho_R
  double du = 0.0;     // dF/du_f
  double flux = 0.0;
};

FaceCoefficients face(double rho_l, double rho_r, double u_l, double u_r,
                      double diff, double h) {
  const double uf = 0.5 * (u_l + u_r);
  const double pe = uf * h / diff;
  const double ape = std::fabs(pe);
  const double bern = bernoulli(ape);
  const double sgn = pe < 0.0 ? -1.0 : 1.0;
  const double dh = diff / h;
  FaceCoefficients f;
  f.a = std::max(uf, 0.0) + dh * bern;
  f.b = std::min(uf, 0.0) - dh * bern;
  f.flux = f.a * rho_l + f.b * rho_r;
  const double up = uf >= 0.0 ? rho_l : rho_r;
  f.du = up + (rho_l - rho_r) * bernoulli_derivative(ape) * sgn;
  return f;
}

double u_floor(double eps, double length) {
  return eps * eps * length + std::pow(eps, 4) / length;
}

// Joint continuity/momentum residual with mu, c frozen.
class FluidSystem {
 public:
  FluidSystem(const State& frozen, double sigma, double eps,
              const ProblemSpec& spec)
      : spec_(spec),
        sigma_(sigma),
        eps_(eps),
        n_(spec.grid.n_cells()),
        h_(spec.grid.spacing()),
        kappa_(capillary(frozen.mu, frozen.c, spec.potential)),
        s_rho_(zero_or(spec.mms, &MmsSources::rho, spec.grid)),
        s_u_(zero_or(spec.mms, &MmsSources::u, spec.grid)) {}

  int size() const { return 2 * n_; }

  // Throws DomainError for densities outside the power-law range.
  std::vector<double> residual(const std::vector<double>& z) const {
    const Field rho = field(z, 0);
    const Field u = field(z, 1);
    const double e2 = eps_ * eps_;
    const double e4 = e2 * e2;
    const double rho0 = spec_.rho0();
    const double lame = spec_.fluid.lame();
    const double delta = spec_.potential.delta;
    std::vector<double> r(z.size(), 0.0);

    for (int j = 1; j < n_; ++j) {
      const auto f = face(rho[j - 1], rho[j], u[j - 1], u[j], e4, h_);
      r[2 * (j - 1)] += f.flux / h_;
      r[2 * j] -= f.flux / h_;
    }
    Field rhouu(spec_.grid), pi(spec_.grid);
    for (int i = 0; i < n_; ++i) {
      rhouu[i] = rho[i] * u[i] * u[i];
      pi[i] = pi_total(rho[i], delta, spec_.fluid);
    }
    const Field lap = laplacian(u, Boundary::kDirichlet0);
    for (int i = 0; i < n_; ++i) {
      r[2 * i] += e2 * (rho[i] - rho0) - s_rho_[i];
      const Stencil dn = central(i, n_, h_, Boundary::kNeumann);
      const Stencil dd = central(i, n_, h_, Boundary::kDirichlet0);
      const double r1 = e2 * rho[i] * u[i] + apply_stencil(dn, rhouu) + apply_stencil(dn, pi) +
                        e4 * apply_stencil(dn, rho) * apply_stencil(dd, u) +
                        rho[i] * (kappa_[i] - spec_.g1[i]) - spec_.g2[i];
      r[2 * i + 1] = lame * lap[i] - sigma_ * (r1 + s_u_[i]);
    }
    return r;
  }

  BandMatrix jacobian(const std::vector<double>& z) const {
    const Field rho = field(z, 0);
    const Field u = field(z, 1);
    const double e2 = eps_ * eps_;
    const double e4 = e2 * e2;
    const double lame = spec_.fluid.lame();
    const double delta = spec_.potential.delta;
    const double ih2 = 1.0 / (h_ * h_);
    BandMatrix J(size(), 3, 3);

    for (int j = 1; j < n_; ++j) {
      const int l = j - 1;
      const auto f = face(rho[l], rho[j], u[l], u[j], e4, h_);
      for (int row : {2 * l, 2 * j}) {
        const double s = (row == 2 * l ? 1.0 : -1.0) / h_;
        J.add(row, 2 * l, s * f.a);
        J.add(row, 2 * j, s * f.b);
        J.add(row, 2 * l + 1, s * 0.5 * f.du);
        J.add(row, 2 * j + 1, s * 0.5 * f.du);
      }
    }
    const Field dd_u = gradient(u, Boundary::kDirichlet0);
    const Field dn_rho = gradient(rho, Boundary::kNeumann);
    for (int i = 0; i < n_; ++i) {
      const int rr = 2 * i;
      const int ru = 2 * i + 1;
      J.add(rr, rr, e2);

      // lame u''
      J.add(ru, ru, -2.0 * lame * ih2);
      J.add(ru, i + 1 < n_ ? 2 * (i + 1) + 1 : ru,
            i + 1 < n_ ? lame * ih2 : -lame * ih2);
      J.add(ru, i > 0 ? 2 * (i - 1) + 1 : ru, i > 0 ? lame * ih2 : -lame * ih2);

      const double m = -sigma_;
      J.add(ru, ru, m * e2 * rho[i]);
      J.add(ru, rr, m * (e2 * u[i] + kappa_[i] - spec_.g1[i]));
      for (const auto& [k, w] : central(i, n_, h_, Boundary::kNeumann)) {
        J.add(ru, 2 * k + 1, m * w * 2.0 * rho[k] * u[k]);
        J.add(ru, 2 * k,
              m * w *
                  (u[k] * u[k] +
                   pi_total_derivative(rho[k], delta, spec_.fluid) +
                   e4 * dd_u[i]));
      }
      for (const auto& [k, w] : central(i, n_, h_, Boundary::kDirichlet0)) {
        J.add(ru, 2 * k + 1, m * e4 * dn_rho[i] * w);
      }
    }
    return J;
  }

  Field field(const std::vector<double>& z, int offset) const {
    Field f(spec_.grid);
    for (int i = 0; i < n_; ++i) f[i] = z[2 * i + offset];
    return f;
  }

  double velocity_reference() const {
    double forcing = 0.0;
    for (int i = 0; i < n_; ++i) {
      forcing = std::max(forcing, std::fabs(spec_.g2[i]) +
                                      std::fabs(kappa_[i]) + std::fabs(s_u_[i]));
    }
    forcing += max_abs(spec_.g1) * spec_.rho0();
    const double l = spec_.grid.length();
    return std::max(forcing * l * l / spec_.fluid.lame(),
                    u_floor(eps_, l));
  }

 private:
  const ProblemSpec& spec_;
  double sigma_;
  double eps_;
  int n_;
  double h_;
  Field kappa_;
  Field s_rho_;
  Field s_u_;
};

double weighted_norm(const std::vector<double>& r,
                     const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += (r[i] * w[i]) * (r[i] * w[i]);
  return std::sqrt(s);
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

double relative_change(const Field& next, const Field& prev, double floor) {
  double diff = 0.0;
  for (std::size_t i = 0; i < next.size(); ++i) {
    diff = std::max(diff, std::fabs(next[i] - prev[i]));
  }
  const double scale = std::max({max_abs(next), max_abs(prev), floor});
  return diff / scale;
}

Field blend(const Field& proposal, const Field& old, double d) {
  if (d == 1.0) return proposal;
  Field out(proposal.grid());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = d * proposal[i] + (1.0 - d) * old[i];
  }
  return out;
}

}  // namespace

double bernoulli(double x) {
  if (std::fabs(x) < 1e-3) {
    const double x2 = x * x;
    return 1.0 - 0.5 * x + x2 / 12.0 - x2 * x2 / 720.0;
  }
  return x / std::expm1(x);
}

double bernoulli_derivative(double x) {
  if (std::fabs(x) < 1e-3) {
    return -0.5 + x / 6.0 - x * x * x / 180.0;
  }
  const double em1 = std::expm1(x);
  const double b = x / em1;
  return (1.0 - b) / em1 - b;
}

FaceFluxes continuity_fluxes(const Field& rho, const Field& u, double eps) {
  const int n = rho.grid().n_cells();
  const double h = rho.grid().spacing();
  const double e4 = std::pow(eps, 4);
  FaceFluxes out;
  out.total.assign(static_cast<std::size_t>(n + 1), 0.0);
  out.advective.assign(static_cast<std::size_t>(n + 1), 0.0);
  for (int j = 1; j < n; ++j) {
    const auto f = face(rho[j - 1], rho[j], u[j - 1], u[j], e4, h);
    out.total[j] = f.flux;
    out.advective[j] = f.flux + e4 * (rho[j] - rho[j - 1]) / h;
  }
  return out;
}

Field solve_continuity(const Field& u, double eps, const ProblemSpec& spec) {
  const Grid& g = spec.grid;
  const int n = g.n_cells();
  const double h = g.spacing();
  const double e2 = eps * eps;
  const double e4 = e2 * e2;
  std::vector<double> sub(n, 0.0), diag(n, e2), sup(n, 0.0), rhs(n);
  for (int i = 0; i < n; ++i) {
    rhs[i] = e2 * spec.rho0() + (spec.mms ? spec.mms->rho[i] : 0.0);
  }
  // Only the flux coefficients matter here; rho values are placeholders.
  for (int j = 1; j < n; ++j) {
    const auto f = face(0.0, 0.0, u[j - 1], u[j], e4, h);
    diag[j - 1] += f.a / h;
    sup[j - 1] += f.b / h;
    sub[j] -= f.a / h;
    diag[j] -= f.b / h;
  }
  for (int i = 0; i < n; ++i) {
    if (!(diag[i] > 0.0) || !std::isfinite(sub[i]) || !std::isfinite(sup[i])) {
      throw SingularSystemError(
          "continuity: degenerate diagonal at cell " + std::to_string(i) +
          " (eps too small for the grid or non-finite velocity)");
    }
  }
  return Field(g, solve_tridiagonal(sub, diag, sup, rhs));
}

Field momentum_forcing(const State& s, double eps, const ProblemSpec& spec) {
  const int n = spec.grid.n_cells();
  const double e2 = eps * eps;
  const double e4 = e2 * e2;
  const double delta = spec.potential.delta;
  Field rhouu(spec.grid), pi(spec.grid);
  for (int i = 0; i < n; ++i) {
    rhouu[i] = s.rho[i] * s.u[i] * s.u[i];
    pi[i] = pi_total(s.rho[i], delta, spec.fluid);
  }
  const Field kappa = capillary(s.mu, s.c, spec.potential);
  const Field d_rhouu = gradient(rhouu, Boundary::kNeumann);
  const Field d_pi = gradient(pi, Boundary::kNeumann);
  const Field d_rho = gradient(s.rho, Boundary::kNeumann);
  const Field d_u = gradient(s.u, Boundary::kDirichlet0);
  Field r(spec.grid);
  for (int i = 0; i < n; ++i) {
    r[i] = e2 * s.rho[i] * s.u[i] + d_rhouu[i] + d_pi[i] +
           e4 * d_rho[i] * d_u[i] + s.rho[i] * (kappa[i] - spec.g1[i]) -
           spec.g2[i];
  }
  return r;
}

Field solve_momentum(const State& state, double sigma, double eps,
                     const ProblemSpec& spec) {
  Field rhs = momentum_forcing(state, eps, spec);
  if (spec.mms) rhs += spec.mms->u;
  rhs *= sigma / spec.fluid.lame();
  return laplacian_solve(rhs, Boundary::kDirichlet0);
}

FluidSolution solve_fluid(const State& state, double sigma, double eps,
                          const ProblemSpec& spec) {
  constexpr int kMaxNewton = 60;
  constexpr int kMaxHalvings = 40;
  constexpr double kTolUpdate = 1e-12;
  constexpr double kStagnation = 1e-9;
  const FluidSystem sys(state, sigma, eps, spec);
  const int n = spec.grid.n_cells();
  const double u_ref = sys.velocity_reference();

  std::vector<double> z(static_cast<std::size_t>(sys.size()));
  for (int i = 0; i < n; ++i) {
    z[2 * i] = state.rho[i];
    z[2 * i + 1] = state.u[i];
  }
  auto fail = [&](const std::string& why) {
    return DivergenceError("fluid Newton: " + why, sigma, eps);
  };

  std::vector<double> r;
  try {
    r = sys.residual(z);
  } catch (const DomainError& e) {
    throw fail(e.what());
  }
  double prev_rel = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= kMaxNewton; ++it) {
    if (!all_finite(r)) throw fail("non-finite residual");
    if (std::all_of(r.begin(), r.end(), [](double v) { return v == 0.0; })) {
      return {sys.field(z, 0), sys.field(z, 1), it - 1};
    }
    BandMatrix J = sys.jacobian(z);
    const std::vector<double> w = J.row_scale();
    std::vector<double> step(r.size());
    for (std::size_t k = 0; k < r.size(); ++k) step[k] = -r[k];
    if (!J.solve(step)) throw fail("singular Jacobian");

    double rho_max = 0.0, u_max = 0.0, drho = 0.0, du = 0.0;
    for (int i = 0; i < n; ++i) {
      rho_max = std::max(rho_max, std::fabs(z[2 * i]));
      u_max = std::max(u_max, std::fabs(z[2 * i + 1]));
      drho = std::max(drho, std::fabs(step[2 * i]));
      du = std::max(du, std::fabs(step[2 * i + 1]));
    }
    const double rel =
        std::max(drho / rho_max, du / std::max(u_max, u_ref));

    if (rel <= kTolUpdate) {
      for (std::size_t m = 0; m < z.size(); ++m) z[m] += step[m];
      return {sys.field(z, 0), sys.field(z, 1), it};
    }
    const double phi = weighted_norm(r, w);
    double alpha = 1.0;
    bool accepted = false;
    std::vector<double> trial(z.size());
    std::vector<double> r_trial;
    for (int k = 0; k < kMaxHalvings; ++k, alpha *= 0.5) {
      bool positive = true;
      for (std::size_t m = 0; m < z.size(); ++m) {
        trial[m] = z[m] + alpha * step[m];
        if (m % 2 == 0 && !(trial[m] > 0.0)) positive = false;
      }
      if (!positive) continue;
      try {
        r_trial = sys.residual(trial);
      } catch (const DomainError&) {
        continue;
      }
      if (!all_finite(r_trial)) continue;
      if (weighted_norm(r_trial, w) <= (1.0 - 1e-4 * alpha) * phi) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // No decrease is possible at roundoff level.
      if (rel <= kStagnation) return {sys.field(z, 0), sys.field(z, 1), it};
      throw fail("line search failed at iteration " + std::to_string(it));
    }
    z.swap(trial);
    r.swap(r_trial);
    if (alpha == 1.0 && rel <= kStagnation && rel >= 0.5 * prev_rel) {
      return {sys.field(z, 0), sys.field(z, 1), it};
    }
    prev_rel = alpha == 1.0 ? rel : std::numeric_limits<double>::infinity();
  }
  throw fail("no convergence in " + std::to_string(kMaxNewton) +
             " iterations");
}

NeumannSolution solve_mu(const State& s, double sigma, double eps,
                         const ProblemSpec& spec) {
  const Grid& g = spec.grid;
  const int n = g.n_cells();
  const double h = g.spacing();
  const FaceFluxes flux = continuity_fluxes(s.rho, s.u, eps);
  const double rho0c0 = spec.m2 / g.length();
  Field rhs(g);
  double t_rc = 0.0, t_adv = 0.0, t_src = 0.0;
  for (int i = 0; i < n; ++i) {
    const double right =
        i + 1 < n ? flux.advective[i + 1] * (s.c[i + 1] - s.c[i]) / h : 0.0;
    const double left =
        i > 0 ? flux.advective[i] * (s.c[i] - s.c[i - 1]) / h : 0.0;
    const double adv = 0.5 * (right + left);
    const double rc = eps * s.rho[i] * s.c[i];
    const double src = spec.mms ? spec.mms->mu[i] : 0.0;
    rhs[i] = sigma * (rc + adv - eps * rho0c0 + src);
    t_rc = std::max(t_rc, std::fabs(rc));
    t_adv = std::max(t_adv, std::fabs(adv));
    t_src = std::max(t_src, std::fabs(src));
  }
  const double m = mean(rhs);
  const double scale =
      sigma * std::max({t_rc, t_adv, eps * std::fabs(rho0c0), t_src});
  NeumannSolution out{Field(g), scale > 0.0 ? std::fabs(m) / scale : 0.0};
  for (int i = 0; i < n; ++i) rhs[i] -= m;
  const Field base = laplacian_solve(rhs, Boundary::kNeumann);
  Field target_density(g);
  for (int i = 0; i < n; ++i) {
    target_density[i] = s.rho[i] * dF_delta(s.c[i], spec.potential);
  }
  out.field = mean_shift(base, integrate(target_density), s.rho);
  return out;
}

NeumannSolution solve_c(const State& s, double sigma, double eps,
                        const ProblemSpec& spec) {
  const Grid& g = spec.grid;
  const int n = g.n_cells();
  const double h = g.spacing();
  Field rhs(g);
  double t_f = 0.0, t_mu = 0.0, t_src = 0.0;
  for (int i = 0; i < n; ++i) {
    const double f = s.rho[i] * dF_delta(s.c[i], spec.potential);
    const double rm = s.rho[i] * s.mu[i];
    const double src = spec.mms ? spec.mms->c[i] : 0.0;
    rhs[i] = sigma * (f - rm + src);
    t_f = std::max(t_f, std::fabs(f));
    t_mu = std::max(t_mu, std::fabs(rm));
    t_src = std::max(t_src, std::fabs(src));
  }
  const double m = mean(rhs);
  const double scale = sigma * std::max({t_f, t_mu, t_src});
  NeumannSolution out{Field(g), scale > 0.0 ? std::fabs(m) / scale : 0.0};
  for (int i = 0; i < n; ++i) rhs[i] -= m;
  Field c = laplacian_solve(rhs, Boundary::kNeumann);

  // int rho (c + s) = m2 + eps int (rho0 - rho)(c + s) - eps^3 I(rho, c),
  // I the face sum of rho' c'.
  const double rho0 = spec.rho0();
  double int_rho = 0.0, int_rho_c = 0.0, int_def_c = 0.0, grad = 0.0;
  for (int i = 0; i < n; ++i) {
    int_rho += s.rho[i] * h;
    int_rho_c += s.rho[i] * c[i] * h;
    int_def_c += (rho0 - s.rho[i]) * c[i] * h;
  }
  for (int j = 1; j < n; ++j) {
    grad += (s.rho[j] - s.rho[j - 1]) * (c[j] - c[j - 1]) / h;
  }
  const double weight = int_rho - eps * (rho0 * g.length() - int_rho);
  if (!(weight > 1e-14 * g.length())) {
    throw DegenerateWeightError("solve_c: constraint weight is " +
                                std::to_string(weight));
  }
  const double shift =
      (spec.m2 + eps * int_def_c - eps * eps * eps * grad - int_rho_c) / weight;
  for (int i = 0; i < n; ++i) c[i] += shift;
  out.field = std::move(c);
  return out;
}

PicardResult picard_step(const State& old, double sigma, double eps,
                         const ProblemSpec& spec,
                         const SolveControls& controls) {
  PicardResult out{old};
  try {
    const FluidSolution fluid = solve_fluid(old, sigma, eps, spec);
    out.newton_iterations = fluid.newton_iterations;
    State next{solve_continuity(fluid.u, eps, spec), fluid.u, old.mu, old.c};
    const NeumannSolution mu = solve_mu(next, sigma, eps, spec);
    next.mu = mu.field;
    const NeumannSolution c = solve_c(next, sigma, eps, spec);
    next.c = c.field;
    out.proj_mu = mu.projection;
    out.proj_c = c.projection;

    const double d = controls.damping;
    out.state = State{blend(next.rho, old.rho, d), blend(next.u, old.u, d),
                      blend(next.mu, old.mu, d), blend(next.c, old.c, d)};
  } catch (const DomainError& e) {
    throw DivergenceError(std::string("picard step: ") + e.what(), sigma, eps);
  } catch (const SingularSystemError& e) {
    throw DivergenceError(std::string("picard step: ") + e.what(), sigma, eps);
  }
  const State& s = out.state;
  if (!s.rho.all_finite() || !s.u.all_finite() || !s.mu.all_finite() ||
      !s.c.all_finite()) {
    throw DivergenceError("picard step produced non-finite values", sigma,
                          eps);
  }
  out.update = std::max(
      {relative_change(s.rho, old.rho, spec.rho0()),
       relative_change(s.u, old.u, u_floor(eps, spec.grid.length())),
       relative_change(s.mu, old.mu, 1.0), relative_change(s.c, old.c, 1.0)});
  out.residual = out.update + out.proj_mu + out.proj_c;
  out.mass_error = std::fabs(integrate(s.rho) - spec.m1) / spec.m1;
  return out;
}

int ConvergenceLog::total_iterations() const {
  int k = 0;
  for (const auto& s : stages) k += static_cast<int>(s.residuals.size());
  return k;
}

double ConvergenceLog::max_mass_error() const {
  double m = 0.0;
  for (const auto& s : stages) {
    for (double e : s.mass_errors) m = std::max(m, e);
  }
  return m;
}

bool ConvergenceLog::converged() const {
  return !stages.empty() && stages.back().converged;
}

namespace {

struct StageOutcome {
  State state;
  StageLog log;
  double proj_mu = 0.0;
  double proj_c = 0.0;
};

StageOutcome run_stage(const State& start, double sigma, double eps,
                       const ProblemSpec& spec,
                       const SolveControls& controls) {
  constexpr int kWindow = 5;
  constexpr double kGrowth = 10.0;
  StageOutcome out{start, StageLog{sigma, eps, false, {}, {}}};
  for (int k = 0; k < controls.max_picard; ++k) {
    PicardResult step = picard_step(out.state, sigma, eps, spec, controls);
    out.state = std::move(step.state);
    out.proj_mu = step.proj_mu;
    out.proj_c = step.proj_c;
    auto& res = out.log.residuals;
    res.push_back(step.residual);
    out.log.mass_errors.push_back(step.mass_error);
    if (!std::isfinite(step.residual)) {
      throw DivergenceError("non-finite Picard residual", sigma, eps);
    }
    if (step.residual <= controls.tol_rel) {
      out.log.converged = true;
      break;
    }
    const std::size_t m = res.size();
    if (m > kWindow && res[m - 1] > kGrowth * res[m - 1 - kWindow]) {
      throw DivergenceError("Picard residual grew by more than 10x over " +
                                std::to_string(kWindow) + " steps",
                            sigma, eps);
    }
  }
  return out;
}

}  // namespace

SolveResult continuation_solve(const ProblemSpec& spec,
                               const SolveControls& controls,
                               const std::optional<State>& initial) {
  spec.validate();
  controls.validate();
  const std::vector<double> eps_list = eps_stages(spec, controls);

  struct Stage {
    double sigma, eps, prev_sigma, prev_eps;
  };
  std::vector<Stage> stages;
  double prev_sigma = 0.0;
  for (double s : controls.sigma_schedule) {
    stages.push_back({s, eps_list.front(), prev_sigma, eps_list.front()});
    prev_sigma = s;
  }
  for (std::size_t k = 1; k < eps_list.size(); ++k) {
    stages.push_back({1.0, eps_list[k], 1.0, eps_list[k - 1]});
  }

  SolveResult result{initial ? *initial : constant_state(spec), {}};
  for (const Stage& st : stages) {
    const State saved = result.state;
    std::vector<StageOutcome> done;
    try {
      done.push_back(run_stage(saved, st.sigma, st.eps, spec, controls));
    } catch (const DivergenceError&) {
      // Retry once through the midpoint of the step.
      const double mid_sigma = 0.5 * (st.prev_sigma + st.sigma);
      const double mid_eps = std::sqrt(st.prev_eps * st.eps);
      try {
        StageOutcome mid = run_stage(saved, mid_sigma, mid_eps, spec, controls);
        StageOutcome fin = run_stage(mid.state, st.sigma, st.eps, spec,
                                     controls);
        done.push_back(std::move(mid));
        done.push_back(std::move(fin));
      } catch (const DivergenceError& e) {
        throw DivergenceError(e.what(), st.sigma, st.eps);
      }
    }
    for (auto& o : done) result.log.stages.push_back(std::move(o.log));
    result.state = std::move(done.back().state);
    result.proj_mu = done.back().proj_mu;
    result.proj_c = done.back().proj_c;
  }
  return result;
}

}  // namespace fhch
