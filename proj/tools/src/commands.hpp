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

#ifndef FHCH_TOOLS_COMMANDS_HPP_
#define FHCH_TOOLS_COMMANDS_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace fhch::cli {

/// File-system failure with the offending path in the message.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes potential.csv and constants.txt. Returns the exit status.
int cmd_potential(const RunConfig& cfg, std::ostream& log);

/// Writes fields.csv, report.txt and convergence.csv. Exit 2 on divergence.
int cmd_solve(const RunConfig& cfg, std::ostream& log);

/// Writes sweep.csv and fields_<k>.csv per value. Exit 1 if any value
/// failed.
int cmd_sweep(const RunConfig& cfg, const std::string& key,
              const std::vector<double>& values, std::ostream& log);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// The invariant suite behind `check`.
std::vector<CheckResult> run_checks(const RunConfig& cfg);

/// Prints the pass/fail table; exit 0 iff all pass.
int cmd_check(const RunConfig& cfg, std::ostream& log);

void write_fields_csv(std::ostream& out, const State& s);
void write_convergence_csv(std::ostream& out, const ConvergenceLog& log);

}  // namespace fhch::cli

#endif  // FHCH_TOOLS_COMMANDS_HPP_
