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

#ifndef FHCH_SWEEP_HPP_
#define FHCH_SWEEP_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fhch/diagnostics.hpp"
#include "fhch/solver.hpp"

namespace fhch {

enum class SweepKey { kDelta, kEps };

/// "delta" or "eps"; throws InvalidParameter otherwise.
SweepKey parse_sweep_key(const std::string& s);
const char* to_string(SweepKey k);

struct SweepRow {
  double value = 0.0;
  /// ok, not_converged, diverged or error.
  std::string status;
  std::string message;
  DiagnosticsReport report;
  int picard_iterations = 0;
  /// Worst relative mass error over every Picard iterate of the run.
  double max_mass_error = 0.0;
  std::optional<State> state;
};

struct SweepReport {
  SweepKey key = SweepKey::kDelta;
  std::vector<SweepRow> rows;

  bool all_ok() const;
};

/// Each value is solved from a cold start, so entries are independent and up
/// to `max_parallel` of them run concurrently. Rows keep the input order.
/// Values must be strictly decreasing inside (0, 1).
SweepReport run_sweep(const ProblemSpec& base, SweepKey key,
                      const std::vector<double>& values,
                      const SolveControls& controls, int max_parallel = 1);

SweepReport delta_sweep(const ProblemSpec& base,
                        const std::vector<double>& deltas,
                        const SolveControls& controls, int max_parallel = 1);
SweepReport eps_sweep(const ProblemSpec& base, const std::vector<double>& eps,
                      const SolveControls& controls, int max_parallel = 1);

/// Header: value,status, the report columns, picard_iterations.
void write_sweep_csv(std::ostream& out, const SweepReport& report);

}  // namespace fhch

#endif  // FHCH_SWEEP_HPP_
