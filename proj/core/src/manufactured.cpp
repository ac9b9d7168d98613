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

#include "fhch/manufactured.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "fhch/errors.hpp"
#include "fhch/potential.hpp"

namespace fhch {

Jet2 operator+(const Jet2& a, const Jet2& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
}
Jet2 operator-(const Jet2& a, const Jet2& b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
}
Jet2 operator*(const Jet2& a, const Jet2& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1,
          a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}
Jet2 operator/(const Jet2& a, const Jet2& b) {
  const double inv = 1.0 / b.v;
  return a * compose(b, inv, -inv * inv, 2.0 * inv * inv * inv);
}
Jet2 operator*(double s, const Jet2& a) { return {s * a.v, s * a.d1, s * a.d2}; }
Jet2 operator+(double s, const Jet2& a) { return {s + a.v, a.d1, a.d2}; }

Jet2 compose(const Jet2& a, double g, double gp, double gpp) {
  return {g, gp * a.d1, gpp * a.d1 * a.d1 + gp * a.d2};
}

Jet2 sin(const Jet2& a) {
  return compose(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v));
}
Jet2 cos(const Jet2& a) {
  return compose(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v));
}
Jet2 atanh(const Jet2& a) {
  const double q = 1.0 / (1.0 - a.v * a.v);
  return compose(a, std::atanh(a.v), q, 2.0 * a.v * q * q);
}

void MmsConfig::validate(const PotentialParams& p) const {
  if (!(std::fabs(rho_amp) < 1.0)) {
    throw InvalidParameter("mms.rho_amp must satisfy |rho_amp| < 1");
  }
  if (mode < 1) throw InvalidParameter("mms.mode must be positive");
  if (!(std::fabs(c_mean) + std::fabs(c_amp) < 1.0 - p.delta)) {
    throw InvalidParameter(
        "mms.c_mean and mms.c_amp must keep |c| below 1 - delta");
  }
}

namespace {

struct Exact {
  Jet2 rho, u, c, mu;
};

class Builder {
 public:
  Builder(const ProblemSpec& spec, const MmsConfig& cfg, double eps)
      : p_(spec.potential),
        fp_(spec.fluid),
        cfg_(cfg),
        eps_(eps),
        rho0_(spec.rho0()),
        k_(cfg.mode * std::numbers::pi / spec.grid.length()) {}

  Exact at(double x) const {
    const Jet2 t = k_ * Jet2::variable(x);
    const Jet2 ct = cos(t);
    const Jet2 st = sin(t);
    Exact e;
    e.rho = rho0_ * (1.0 + cfg_.rho_amp * ct);
    const Jet2 drho = (-rho0_ * cfg_.rho_amp * k_) * st;
    const Jet2 mass = (-rho0_ * cfg_.rho_amp / k_) * st;
    const double e2 = eps_ * eps_;
    e.u = (e2 * e2 * drho + e2 * mass) / e.rho;
    e.c = cfg_.c_mean + cfg_.c_amp * ct;
    const Jet2 c_dd = (-cfg_.c_amp * k_ * k_) * ct;
    e.mu = p_.theta0 * atanh(e.c) - p_.thetac * e.c - c_dd / e.rho;
    return e;
  }

  // rho c - eps (rho0 - rho) c + eps^3 rho' c' at x.
  double constraint_density(double x) const {
    const Exact e = at(x);
    return e.rho.v * e.c.v - eps_ * (rho0_ - e.rho.v) * e.c.v +
           eps_ * eps_ * eps_ * e.rho.d1 * e.c.d1;
  }

  double mu_source(double x, double rho0c0) const {
    const Exact e = at(x);
    return e.mu.d2 - (eps_ * e.rho.v * e.c.v + e.rho.v * e.u.v * e.c.d1 -
                      eps_ * rho0c0);
  }

  double u_source(double x) const {
    const Exact e = at(x);
    const double e2 = eps_ * eps_;
    const double delta = p_.delta;
    const double dpi =
        (artificial_pressure_derivative(e.rho.v, delta, fp_) +
         pressure_derivative(e.rho.v, fp_)) *
        e.rho.d1;
    const Jet2 rhouu = e.rho * e.u * e.u;
    const double r1 =
        e2 * e.rho.v * e.u.v + rhouu.d1 + dpi + e2 * e2 * e.rho.d1 * e.u.d1 +
        e.rho.v * (dF_delta(e.c.v, p_) - e.mu.v) * e.c.d1;
    return fp_.lame() * e.u.d2 - r1;
  }

 private:
  PotentialParams p_;
  FluidParams fp_;
  MmsConfig cfg_;
  double eps_;
  double rho0_;
  double k_;
};

// Composite 5-point Gauss-Legendre on [0, L].
template <class F>
double gauss_legendre(F&& f, double length, int panels) {
  static constexpr std::array<double, 5> kNodes = {
      0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
      0.9061798459386640};
  static constexpr std::array<double, 5> kWeights = {
      0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
      0.2369268850561891, 0.2369268850561891};
  const double w = length / panels;
  double sum = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double mid = (k + 0.5) * w;
    for (int q = 0; q < 5; ++q) {
      sum += kWeights[q] * f(mid + 0.5 * w * kNodes[q]);
    }
  }
  return 0.5 * w * sum;
}

}  // namespace

ManufacturedProblem manufactured_problem(const ProblemSpec& base,
                                         const MmsConfig& cfg, double eps) {
  cfg.validate(base.potential);
  ProblemSpec spec = base;
  spec.eps = eps;
  spec.g1 = Field(spec.grid);
  spec.g2 = Field(spec.grid);
  spec.mms.reset();
  const Builder b(spec, cfg, eps);
  const double length = spec.grid.length();
  spec.m2 = gauss_legendre(
      [&](double x) { return b.constraint_density(x); }, length, 256);
  const double rho0c0 = spec.m2 / length;

  const Grid& g = spec.grid;
  State exact{Field(g), Field(g), Field(g), Field(g)};
  MmsSources src{Field(g), Field(g), Field(g), Field(g)};
  for (int i = 0; i < g.n_cells(); ++i) {
    const double x = g.cell_center(i);
    const Exact e = b.at(x);
    exact.rho[i] = e.rho.v;
    exact.u[i] = e.u.v;
    exact.mu[i] = e.mu.v;
    exact.c[i] = e.c.v;
    src.mu[i] = b.mu_source(x, rho0c0);
    src.u[i] = b.u_source(x);
  }
  const double m = mean(src.mu);
  for (std::size_t i = 0; i < src.mu.size(); ++i) src.mu[i] -= m;
  spec.mms = std::move(src);
  spec.validate();
  return {std::move(spec), std::move(exact)};
}

double relative_l2_error(const Field& a, const Field& b) {
  return l2_norm(a - b) / l2_norm(b);
}

}  // namespace fhch
