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

#ifndef FHCH_TESTS_FIXTURES_HPP_
#define FHCH_TESTS_FIXTURES_HPP_

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fhch/fhch.hpp"

namespace fhch::testing {

/// Smooth forced problem used across the solver and diagnostics tests.
inline ProblemSpec forced_problem(int n, double amp, double eps = 1e-2) {
  ProblemSpec s;
  s.grid = Grid(n, 1.0);
  s.m1 = 0.5;
  s.m2 = 0.15;
  s.eps = eps;
  s.g1 = Field::from_function(
      s.grid, [=](double x) { return amp * std::sin(std::numbers::pi * x); });
  s.g2 = Field::from_function(s.grid, [=](double x) {
    return amp * std::cos(2.0 * std::numbers::pi * x);
  });
  return s;
}

inline ProblemSpec unforced_problem(int n) {
  ProblemSpec s;
  s.grid = Grid(n, 1.0);
  s.m1 = 1.0;
  s.m2 = 0.3;
  s.eps = 1e-2;
  s.g1 = Field(s.grid);
  s.g2 = Field(s.grid);
  return s;
}

inline double max_rel_dev(const Field& a, const Field& b, double floor) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::fabs(a[i] - b[i]) / std::max(floor, std::fabs(b[i])));
  }
  return m;
}

}  // namespace fhch::testing

#endif  // FHCH_TESTS_FIXTURES_HPP_
