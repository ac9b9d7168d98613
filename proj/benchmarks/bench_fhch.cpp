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

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "fhch/fhch.hpp"

namespace {

using namespace fhch;

ProblemSpec forced(int n) {
  ProblemSpec s;
  s.grid = Grid(n, 1.0);
  s.m1 = 0.5;
  s.m2 = 0.15;
  s.eps = 1e-2;
  s.g1 = Field::from_function(
      s.grid, [](double x) { return 0.1 * std::sin(std::numbers::pi * x); });
  s.g2 = Field::from_function(s.grid, [](double x) {
    return 0.1 * std::cos(2.0 * std::numbers::pi * x);
  });
  return s;
}

void BM_PotentialDerivative(benchmark::State& state) {
  const PotentialParams p;
  const auto grid = linspace(-2.0, 2.0, 4001);
  for (auto _ : state) {
    double s = 0.0;
    for (double c : grid) s += dF_delta(c, p);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()));
}
BENCHMARK(BM_PotentialDerivative);

void BM_NeumannSolve(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), 1.0);
  Field rhs = Field::from_function(
      g, [](double x) { return std::cos(2.0 * std::numbers::pi * x); });
  rhs -= Field(g, mean(rhs));
  for (auto _ : state) {
    benchmark::DoNotOptimize(laplacian_solve(rhs, Boundary::kNeumann));
  }
}
BENCHMARK(BM_NeumannSolve)->Arg(256)->Arg(4096);

void BM_PicardStep(benchmark::State& state) {
  const ProblemSpec s = forced(static_cast<int>(state.range(0)));
  const State start = constant_state(s);
  const SolveControls c;
  for (auto _ : state) {
    benchmark::DoNotOptimize(picard_step(start, 1.0, s.eps, s, c));
  }
}
BENCHMARK(BM_PicardStep)->Arg(256);

void BM_ContinuationSolve(benchmark::State& state) {
  const ProblemSpec s = forced(256);
  const SolveControls c;
  for (auto _ : state) {
    benchmark::DoNotOptimize(continuation_solve(s, c));
  }
}
BENCHMARK(BM_ContinuationSolve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
