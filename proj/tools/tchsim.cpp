// Copyright 2026 The tchsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line driver: simulate, sweep, and basis/operator/thermal exports.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tchsim/kernels.hpp"
#include "tchsim/scenarios.hpp"
#include "tchsim/thermal.hpp"

namespace fs = std::filesystem;
using namespace tchsim;

namespace {

void write_or_print(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    write_file(out, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Open-system cavity QED simulator for the H2 association/dissociation models"};
  app.require_subcommand(1);

  std::string scenario;
  std::string out_dir;
  auto* simulate = app.add_subcommand("simulate", "Run one scenario and write CSV/JSON results");
  simulate->add_option("--scenario", scenario, "Builtin name (fig4a..fig9) or config file path")->required();
  simulate->add_option("--out", out_dir, "Output directory")->required();
  std::size_t steps = 0;
  simulate->add_option("--steps", steps, "Override the number of steps");

  std::string param;
  std::string grid;
  std::size_t report_at = 20000;
  unsigned workers = 0;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Final P_final over a grid of one mu parameter");
  sweep->add_option("--scenario", scenario, "Builtin name or config file path")->required();
  sweep->add_option("--param", param, "mu_omega, mu_Omega, mu_Omega_s or locked")->required();
  sweep->add_option("--grid", grid, "start:stop:n (default 0:0.5:51)");
  sweep->add_option("--report-at", report_at, "Step at which P_final is reported");
  sweep->add_option("--workers", workers, "Parallel runs (0: one per core)");
  sweep->add_option("--out", sweep_out, "CSV file (default stdout)");

  std::string file_out;
  auto* basis = app.add_subcommand("basis", "Print the generated basis as a JSON array");
  basis->add_option("--scenario", scenario)->required();
  basis->add_option("--out", file_out, "File (default stdout)");

  auto* op = app.add_subcommand("operator", "Dump the Hamiltonian as 'row col re im' lines");
  op->add_option("--scenario", scenario)->required();
  op->add_option("--out", file_out, "File (default stdout)");

  double mu = 0.5;
  int cutoff = 2;
  std::size_t thermal_steps = 10000;
  double thermal_dt = 0.01;
  auto* thermal = app.add_subcommand("thermal", "Relax a photon mode towards its Gibbs state and report");
  thermal->add_option("--mu", mu, "Influx/leakage ratio");
  thermal->add_option("--cutoff", cutoff, "Photon cutoff");
  thermal->add_option("--steps", thermal_steps);
  thermal->add_option("--dt", thermal_dt, "Step (gamma_out = 1)");
  thermal->add_option("--out", file_out, "File (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      ScenarioConfig c = resolve_scenario(scenario);
      if (steps > 0) c.steps = steps;
      const ScenarioResult r = run_scenario(c);
      emit(r, out_dir);
      std::fprintf(stderr, "%s: basis %zu, P_final %.6g, isa %s -> %s\n", c.name.c_str(), r.basis_size,
                   r.final_value("P_final"), kernels::isa_name(kernels::active().isa), out_dir.c_str());
    } else if (*sweep) {
      SweepConfig s;
      s.base = resolve_scenario(scenario);
      s.param = parse_sweep_param(param);
      s.grid = parse_grid(grid.empty() ? "0:0.5:51" : grid);
      s.report_at = report_at;
      s.workers = workers;
      write_or_print(sweep_out, sweep_csv(run_sweep(s)));
    } else if (*basis) {
      write_or_print(file_out, basis_to_json(build_model(resolve_scenario(scenario)).basis) + "\n");
    } else if (*op) {
      const ScenarioConfig c = resolve_scenario(scenario);
      write_or_print(file_out, dump_operator(build_model(c).hamiltonian, config_hash(c)));
    } else if (*thermal) {
      ProductSystem sys;
      sys.photon = ThermalSpec{ModeId::generic(0), mu, cutoff};
      sys.rho_photon = DenseMatrix::Zero(cutoff + 1, cutoff + 1);
      sys.rho_photon(0, 0) = 1.0;
      write_or_print(file_out, thermal_report_json(verify_product_stationarity(sys, thermal_steps, thermal_dt)));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
