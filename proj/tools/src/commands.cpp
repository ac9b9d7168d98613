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

#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace fhch::cli {

namespace fs = std::filesystem;

namespace {

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + dir +
                  "': " + ec.message());
  }
  return fs::path(dir);
}

// Writes through a buffer so a file is either complete or absent.
void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

template <class F>
std::string render(F&& f) {
  std::ostringstream s;
  f(s);
  return s.str();
}

double tau_of(const RunConfig& cfg, const ProblemSpec& spec) {
  return cfg.tau > 0.0 ? cfg.tau : default_tau(spec);
}

}  // namespace

void write_fields_csv(std::ostream& out, const State& s) {
  const Grid& g = s.rho.grid();
  out << "x,rho,u,mu,c\n";
  for (int i = 0; i < g.n_cells(); ++i) {
    out << format_sci(g.cell_center(i)) << ',' << format_sci(s.rho[i]) << ','
        << format_sci(s.u[i]) << ',' << format_sci(s.mu[i]) << ','
        << format_sci(s.c[i]) << '\n';
  }
}

void write_convergence_csv(std::ostream& out, const ConvergenceLog& log) {
  out << "stage,iteration,residual\n";
  for (std::size_t k = 0; k < log.stages.size(); ++k) {
    const auto& st = log.stages[k];
    for (std::size_t i = 0; i < st.residuals.size(); ++i) {
      out << k << ',' << i + 1 << ',' << format_sci(st.residuals[i]) << '\n';
    }
  }
}

int cmd_potential(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir = prepare_dir(cfg.output_dir);
  const auto grid = linspace(cfg.potential_grid_min, cfg.potential_grid_max,
                             cfg.potential_grid_points);
  const auto rows = curve_table(cfg.potential, grid);
  write_file(dir / "potential.csv",
             render([&](std::ostream& s) { write_curve_csv(s, rows); }));
  const PotentialConstants k = constants(cfg.potential);
  write_file(dir / "constants.txt", render([&](std::ostream& s) {
               s << "theta0=" << format_sci(cfg.potential.theta0) << '\n'
                 << "thetac=" << format_sci(cfg.potential.thetac) << '\n'
                 << "delta=" << format_sci(cfg.potential.delta) << '\n'
                 << "c_star=" << format_sci(k.c_star) << '\n'
                 << "spinodal=" << format_sci(k.spinodal) << '\n'
                 << "bound_M_estimate=" << format_sci(k.bound_M_estimate)
                 << '\n';
             }));
  log << "wrote " << (dir / "potential.csv").string() << " and "
      << (dir / "constants.txt").string() << '\n';
  return 0;
}

int cmd_solve(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir = prepare_dir(cfg.output_dir);
  const ProblemSpec spec = cfg.problem();
  for (const auto& w : spec.fluid.warnings()) log << "warning: " << w << '\n';
  std::optional<SolveResult> solved;
  try {
    solved = continuation_solve(spec, cfg.controls);
  } catch (const DivergenceError& e) {
    log << "error: solver diverged at stage sigma=" << format_sci(e.sigma())
        << " eps=" << format_sci(e.eps()) << ": " << e.what() << '\n';
    return 2;
  }
  const SolveResult& res = *solved;
  const DiagnosticsReport rep =
      diagnose(res.state, spec, res.proj_mu, res.proj_c, tau_of(cfg, spec));
  write_file(dir / "fields.csv",
             render([&](std::ostream& s) { write_fields_csv(s, res.state); }));
  write_file(dir / "convergence.csv", render([&](std::ostream& s) {
               write_convergence_csv(s, res.log);
             }));
  write_file(dir / "report.txt", render([&](std::ostream& s) {
               s << "converged=" << (res.log.converged() ? 1 : 0) << '\n'
                 << "picard_iterations=" << res.log.total_iterations() << '\n'
                 << "max_mass_error=" << format_sci(res.log.max_mass_error())
                 << '\n';
               for (std::size_t k = 0; k < res.log.stages.size(); ++k) {
                 const auto& st = res.log.stages[k];
                 s << "stage" << k << "=sigma:" << format_sci(st.sigma)
                   << ",eps:" << format_sci(st.eps)
                   << ",iterations:" << st.residuals.size()
                   << ",converged:" << (st.converged ? 1 : 0) << '\n';
               }
               write_key_value(s, rep);
               if (cfg.mms_enabled) {
                 const State exact = cfg.mms_exact();
                 s << "mms_error_rho="
                   << format_sci(relative_l2_error(res.state.rho, exact.rho))
                   << '\n'
                   << "mms_error_u="
                   << format_sci(relative_l2_error(res.state.u, exact.u))
                   << '\n'
                   << "mms_error_mu="
                   << format_sci(relative_l2_error(res.state.mu, exact.mu))
                   << '\n'
                   << "mms_error_c="
                   << format_sci(relative_l2_error(res.state.c, exact.c))
                   << '\n';
               }
             }));
  log << "solve " << (res.log.converged() ? "converged" : "did not converge")
      << " after " << res.log.total_iterations() << " Picard iterations; wrote "
      << dir.string() << '\n';
  return res.log.converged() ? 0 : 1;
}

int cmd_sweep(const RunConfig& cfg, const std::string& key,
              const std::vector<double>& values, std::ostream& log) {
  const SweepKey k = parse_sweep_key(key);
  if (values.empty()) throw InvalidParameter("--values must not be empty");
  const fs::path dir = prepare_dir(cfg.output_dir);
  const ProblemSpec spec = cfg.problem();
  const int width = cfg.max_parallel > 0
                        ? std::min<int>(cfg.max_parallel,
                                        static_cast<int>(values.size()))
                        : static_cast<int>(values.size());
  const SweepReport rep = run_sweep(spec, k, values, cfg.controls, width);
  write_file(dir / "sweep.csv",
             render([&](std::ostream& s) { write_sweep_csv(s, rep); }));
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& row = rep.rows[i];
    char name[32];
    std::snprintf(name, sizeof name, "fields_%03zu.csv", i);
    if (row.state) {
      write_file(dir / name, render([&](std::ostream& s) {
                   write_fields_csv(s, *row.state);
                 }));
    }
    if (row.status != "ok") {
      log << "value " << format_sci(row.value) << ": " << row.status;
      if (!row.message.empty()) log << " (" << row.message << ')';
      log << '\n';
    }
  }
  log << "sweep over " << key << " with " << values.size()
      << " values; wrote " << (dir / "sweep.csv").string() << '\n';
  return rep.all_ok() ? 0 : 1;
}

int cmd_check(const RunConfig& cfg, std::ostream& log) {
  const auto results = run_checks(cfg);
  bool all = true;
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.name.size());
  for (const auto& r : results) {
    all = all && r.pass;
    log << (r.pass ? "PASS  " : "FAIL  ") << r.name
        << std::string(width - r.name.size() + 2, ' ') << r.detail << '\n';
  }
  log << (all ? "all checks passed" : "some checks failed") << '\n';
  return all ? 0 : 1;
}

}  // namespace fhch::cli
