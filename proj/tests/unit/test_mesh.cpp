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
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "fhch/errors.hpp"
#include "fhch/mesh.hpp"

using namespace fhch;

namespace {

constexpr double kPi = std::numbers::pi;

Field random_field(const Grid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Field f(g);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = u(rng);
  return f;
}

Field demean(Field f) {
  const double m = mean(f);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] -= m;
  return f;
}

}  // namespace

TEST_CASE("grid geometry") {
  const Grid g(16, 2.0);
  CHECK(g.spacing() == 0.125);
  CHECK(g.cell_center(0) == 0.0625);
  CHECK(g.face(16) == 2.0);
  CHECK_THROWS_AS(Grid(4, 1.0), InvalidParameter);
  CHECK_THROWS_AS(Grid(16, 0.0), InvalidParameter);
  CHECK_THROWS_AS(Field(g, std::vector<double>(3, 0.0)), std::invalid_argument);
}

TEST_CASE("ghost conventions") {
  const Grid g(8, 1.0);
  Field f(g, 2.0);
  f[7] = 3.0;
  CHECK(f.with_ghost(-1, Boundary::kNeumann) == 2.0);
  CHECK(f.with_ghost(-1, Boundary::kDirichlet0) == -2.0);
  CHECK(f.with_ghost(8, Boundary::kDirichlet0) == -3.0);
}

TEST_CASE("gradient of a constant with Neumann ghosts is zero") {
  const Grid g(32, 1.0);
  CHECK(max_abs(gradient(Field(g, 4.2), Boundary::kNeumann)) == 0.0);
  CHECK(max_abs(laplacian(Field(g, 4.2), Boundary::kNeumann)) == 0.0);
}

TEST_CASE("gradient is exact on linear data away from the boundary") {
  const Grid g(32, 1.0);
  const Field f = Field::from_function(g, [](double x) { return 3 * x - 1; });
  const Field d = gradient(f, Boundary::kNeumann);
  for (int i = 1; i < 31; ++i) CHECK(d[i] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("laplacian is second order in the interior") {
  std::vector<double> err;
  for (int n : {32, 64, 128}) {
    const Grid g(n, 1.0);
    const Field f = Field::from_function(g, [](double x) { return std::cos(kPi * x); });
    const Field l = laplacian(f, Boundary::kNeumann);
    double e = 0.0;
    for (int i = 1; i < n - 1; ++i) {
      e = std::max(e, std::fabs(l[i] + kPi * kPi * std::cos(kPi * g.cell_center(i))));
    }
    err.push_back(e);
  }
  CHECK(std::log2(err[0] / err[1]) >= 1.9);
  CHECK(std::log2(err[1] / err[2]) >= 1.9);
}

TEST_CASE("summation by parts") {
  const Grid g(40, 1.0);
  const Field f = random_field(g, 1);
  for (Boundary bc : {Boundary::kNeumann, Boundary::kDirichlet0}) {
    const double a = integrate(hadamard(f, laplacian(f, bc)));
    const double e = face_dirichlet_energy(f, bc);
    CHECK(a == doctest::Approx(-e).epsilon(1e-12));
  }
  // Laplacian is self-adjoint for both ghost conventions.
  const Field q = random_field(g, 2);
  for (Boundary bc : {Boundary::kNeumann, Boundary::kDirichlet0}) {
    CHECK(integrate(hadamard(q, laplacian(f, bc))) ==
          doctest::Approx(integrate(hadamard(f, laplacian(q, bc)))).epsilon(1e-12));
  }
  // Neumann laplacian output integrates to zero.
  CHECK(std::fabs(integrate(laplacian(f, Boundary::kNeumann))) <= 1e-10);
}

TEST_CASE("Neumann Poisson solve converges at second order") {
  std::vector<double> err;
  for (int n : {32, 64, 128, 256}) {
    const Grid g(n, 1.0);
    const Field exact = demean(
        Field::from_function(g, [](double x) { return std::cos(2 * kPi * x); }));
    const Field rhs = demean(Field::from_function(
        g, [](double x) { return -4 * kPi * kPi * std::cos(2 * kPi * x); }));
    const Field x = laplacian_solve(rhs, Boundary::kNeumann);
    CHECK(std::fabs(mean(x)) <= 1e-14);
    err.push_back(max_abs(x - exact));
  }
  for (std::size_t k = 1; k < err.size(); ++k) {
    CHECK(std::log2(err[k - 1] / err[k]) >= 1.9);
  }
}

TEST_CASE("Dirichlet solve reproduces a parabola up to the ghost error") {
  // u = x(1-x): u'' = -2. Ghost reflection is second order at the boundary.
  std::vector<double> err;
  for (int n : {32, 64, 128}) {
    const Grid g(n, 1.0);
    const Field exact = Field::from_function(g, [](double x) { return x * (1 - x); });
    const Field x = laplacian_solve(Field(g, -2.0), Boundary::kDirichlet0);
    err.push_back(max_abs(x - exact));
  }
  CHECK(std::log2(err[1] / err[2]) >= 1.9);
}

TEST_CASE("discrete solve inverts the discrete operator") {
  const Grid g(50, 2.0);
  const Field x = random_field(g, 3);
  for (Boundary bc : {Boundary::kNeumann, Boundary::kDirichlet0}) {
    for (double shift : {0.0, 0.7}) {
      if (bc == Boundary::kNeumann && shift == 0.0) {
        const Field x0 = demean(x);
        const Field back = laplacian_solve(laplacian(x0, bc), bc);
        CHECK(max_abs(back - x0) <= 1e-10);
        continue;
      }
      const Field rhs = laplacian(x, bc) - shift * x;
      CHECK(max_abs(laplacian_solve(rhs, bc, shift) - x) <= 1e-10);
    }
  }
}

TEST_CASE("Neumann solve with zero rhs returns zero") {
  const Grid g(20, 1.0);
  CHECK(max_abs(laplacian_solve(Field(g), Boundary::kNeumann)) == 0.0);
}

TEST_CASE("Neumann solve rejects data with a mean") {
  const Grid g(20, 1.0);
  CHECK_THROWS_AS(laplacian_solve(Field(g, 1.0), Boundary::kNeumann),
                  SolvabilityError);
  CHECK_NOTHROW(laplacian_solve(Field(g, 1.0), Boundary::kNeumann, 1.0));
  CHECK_THROWS_AS(laplacian_solve(Field(g, 1.0), Boundary::kNeumann, -1.0),
                  InvalidParameter);
}

TEST_CASE("integrals and norms") {
  const Grid g(10, 2.0);
  CHECK(integrate(Field(g, 3.0)) == doctest::Approx(6.0));
  CHECK(mean(Field(g, 3.0)) == doctest::Approx(3.0));
  CHECK(l2_norm(Field(g, 3.0)) == doctest::Approx(3.0 * std::sqrt(2.0)));
  Field f(g);
  f[4] = -7.0;
  CHECK(max_abs(f) == 7.0);
}

TEST_CASE("mean shift hits the weighted target") {
  const Grid g(30, 1.0);
  const Field f = random_field(g, 4);
  Field w = random_field(g, 5);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1.5 + w[i];
  const Field s = mean_shift(f, 0.25, w);
  CHECK(integrate(hadamard(w, s)) == doctest::Approx(0.25).epsilon(1e-13));
  // The shift is a constant.
  const Field d = s - f;
  for (std::size_t i = 1; i < d.size(); ++i) CHECK(d[i] == doctest::Approx(d[0]));
  CHECK_THROWS_AS(mean_shift(f, 0.0, Field(g, 0.0)), DegenerateWeightError);
}

TEST_CASE("tridiagonal solve") {
  const std::vector<double> sub{0, 1, 1}, diag{4, 4, 4}, sup{1, 1, 0}, rhs{5, 6, 5};
  const auto x = solve_tridiagonal(sub, diag, sup, rhs);
  for (double v : x) CHECK(v == doctest::Approx(1.0));
  const std::vector<double> zero{0, 4, 4};
  CHECK_THROWS_AS(solve_tridiagonal(sub, zero, sup, rhs), SingularSystemError);
}

TEST_CASE("field arithmetic") {
  const Grid g(8, 1.0);
  Field a(g, 2.0), b(g, 3.0);
  CHECK((a + b)[3] == 5.0);
  CHECK((a - b)[3] == -1.0);
  CHECK((2.0 * b)[0] == 6.0);
  CHECK(hadamard(a, b)[7] == 6.0);
  a[2] = std::nan("");
  CHECK_FALSE(a.all_finite());
}
