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

#include "fhch/sweep.hpp"

#include <algorithm>
#include <future>
#include <ostream>

#include "fhch/errors.hpp"
#include "fhch/format.hpp"

namespace fhch {

SweepKey parse_sweep_key(const std::string& s) {
  if (s == "delta") return SweepKey::kDelta;
  if (s == "eps") return SweepKey::kEps;
  throw InvalidParameter("sweep key must be delta or eps (got '" + s + "')");
}

const char* to_string(SweepKey k) {
  return k == SweepKey::kDelta ? "delta" : "eps";
}

bool SweepReport::all_ok() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const SweepRow& r) { return r.status == "ok"; });
}

namespace {

SweepRow solve_one(ProblemSpec spec, SweepKey key, double value,
                   const SolveControls& controls) {
  SweepRow row;
  row.value = value;
  row.report = nan_report();
  try {
    if (key == SweepKey::kDelta) {
      spec.potential.delta = value;
    } else {
      spec.eps = value;
    }
    const SolveResult res = continuation_solve(spec, controls);
    row.picard_iterations = res.log.total_iterations();
    row.max_mass_error = res.log.max_mass_error();
    row.report = diagnose(res.state, spec, res.proj_mu, res.proj_c);
    row.state = res.state;
    row.status = res.log.converged() ? "ok" : "not_converged";
  } catch (const DivergenceError& e) {
    row.status = "diverged";
    row.message = e.what();
  } catch (const std::exception& e) {
    row.status = "error";
    row.message = e.what();
  }
  return row;
}

}  // namespace

SweepReport run_sweep(const ProblemSpec& base, SweepKey key,
                      const std::vector<double>& values,
                      const SolveControls& controls, int max_parallel) {
  if (values.empty()) {
    throw InvalidParameter("sweep needs at least one value");
  }
  double prev = 1.0;
  for (double v : values) {
    if (!(v > 0.0) || !(v < prev)) {
      throw InvalidParameter(std::string("sweep values for ") +
                             to_string(key) +
                             " must be strictly decreasing inside (0, 1)");
    }
    prev = v;
  }
  SweepReport report;
  report.key = key;
  report.rows.resize(values.size());
  const std::size_t width =
      static_cast<std::size_t>(std::max(1, max_parallel));
  for (std::size_t start = 0; start < values.size(); start += width) {
    const std::size_t stop = std::min(values.size(), start + width);
    if (stop - start == 1) {
      report.rows[start] = solve_one(base, key, values[start], controls);
      continue;
    }
    std::vector<std::future<SweepRow>> jobs;
    for (std::size_t k = start; k < stop; ++k) {
      jobs.push_back(std::async(std::launch::async, solve_one, base, key,
                                values[k], controls));
    }
    for (std::size_t k = start; k < stop; ++k) {
      report.rows[k] = jobs[k - start].get();
    }
  }
  return report;
}

SweepReport delta_sweep(const ProblemSpec& base,
                        const std::vector<double>& deltas,
                        const SolveControls& controls, int max_parallel) {
  return run_sweep(base, SweepKey::kDelta, deltas, controls, max_parallel);
}

SweepReport eps_sweep(const ProblemSpec& base, const std::vector<double>& eps,
                      const SolveControls& controls, int max_parallel) {
  return run_sweep(base, SweepKey::kEps, eps, controls, max_parallel);
}

void write_sweep_csv(std::ostream& out, const SweepReport& report) {
  out << "value,status";
  for (const auto& kv : report_fields(nan_report())) out << ',' << kv.first;
  out << ",picard_iterations\n";
  for (const SweepRow& r : report.rows) {
    out << format_sci(r.value) << ',' << r.status;
    for (const auto& kv : report_fields(r.report)) {
      out << ',' << format_sci(kv.second);
    }
    out << ',' << r.picard_iterations << '\n';
  }
}

}  // namespace fhch
