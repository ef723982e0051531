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


#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tchsim/generator.hpp"
#include "tchsim/lindblad.hpp"
#include "tchsim/operators.hpp"

namespace tchsim {

enum class ModelKind { AssocDissocNoSpin, AssocDissocSpin, CovalentBond, JCM, TCM, TCHM };

std::string_view model_name(ModelKind kind);
ModelKind parse_model(std::string_view name);

struct ChannelSpec {
  ModeId mode;
  double gamma_out = 0.001;
  double mu = 0.0;
  friend bool operator==(const ChannelSpec&, const ChannelSpec&) = default;
};

struct InitialComponent {
  double amplitude = 1.0;
  BasisState state;
};

/// Everything a run needs. Fully deterministic: there is no seed.
struct ScenarioConfig {
  std::string name = "custom";
  ModelKind model = ModelKind::AssocDissocSpin;
  ModelParams params;
  // JCM/TCM use cavities[0]; TCHM uses all of them with `hopping`.
  std::vector<CavityParams> cavities;
  double hopping = 0.0;
  bool rwa = true;

  // Superposition of basis states; amplitudes are normalized on use.
  std::vector<InitialComponent> initial;
  std::vector<ChannelSpec> channels;
  std::size_t steps = 20000;
  double dt = 10.0;
  std::size_t stride = 20;
  // Explicit per-mode cutoffs; unset modes get max(initial occupation, 1).
  Cutoffs cutoffs;
  // Let influx jumps take part in basis closure.
  bool closure_influx = false;
  std::string output;

  void validate() const;
};

/// Modes carried by the model, in slot order.
std::vector<ModeId> model_modes(const ScenarioConfig& config);

/// Explicit cutoffs win. Otherwise max(initial occupation, 1), raised to 2 for
/// pumped modes when influx takes part in closure.
Cutoffs resolve_cutoffs(const ScenarioConfig& config);

/// Flat `key = value` text; see docs/config.md. Parse errors name the line.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);
/// Canonical text of a config; parse_config(to_config_text(c)) reproduces c.
std::string to_config_text(const ScenarioConfig& config);
/// FNV-1a of the canonical text without the output path.
std::uint64_t config_hash(const ScenarioConfig& config);

/// fig4a, fig4b, fig5, fig6, fig7, fig8, fig9.
const std::vector<std::string>& builtin_names();
ScenarioConfig builtin_scenario(std::string_view name);

/// Builtin name or path to a config file.
ScenarioConfig resolve_scenario(std::string_view name_or_path);

struct BuiltModel {
  Basis basis;
  SparseOperator hamiltonian;
  std::vector<DissipationChannel> channels;
  std::vector<Observable> observables;  // P_initial, P_final, then the sector pair
  DenseMatrix rho0;
};

BuiltModel build_model(const ScenarioConfig& config);

struct ScenarioResult {
  ScenarioConfig config;
  std::size_t basis_size = 0;
  std::uint64_t config_hash = 0;
  TimeSeries series;

  /// Value of an observable at the last recorded step.
  double final_value(std::string_view label) const;
};

ScenarioResult run_scenario(const ScenarioConfig& config, bool track_min_eig = true);

enum class OutputFormat { Csv, Json };
std::string render(const ScenarioResult& result, OutputFormat format);
/// Writes <dir>/timeseries.csv, <dir>/summary.json and <dir>/basis.json.
void emit(const ScenarioResult& result, const std::filesystem::path& dir);

enum class SweepParam { MuOmega, MuBigOmega, MuSpin, Locked };

std::string_view sweep_param_name(SweepParam p);
SweepParam parse_sweep_param(std::string_view name);
/// `start:stop:n`, n evenly spaced values including both ends.
std::vector<double> parse_grid(std::string_view text);

struct SweepConfig {
  ScenarioConfig base;
  SweepParam param = SweepParam::MuBigOmega;
  std::vector<double> grid;
  std::size_t report_at = 20000;
  unsigned workers = 0;  // 0: hardware concurrency
};

/// Default sweep of fig5..fig8: 51 points over [0, 0.5].
SweepConfig builtin_sweep(std::string_view name);

/// Sets the swept channel mu values; throws if the model lacks the channel.
void apply_sweep_value(ScenarioConfig& config, SweepParam param, double value);

struct SweepRow {
  double value = 0.0;
  double temperature = 0.0;
  double p_final = 0.0;
};

std::vector<SweepRow> run_sweep(const SweepConfig& sweep);
/// `mu,T,P_final`.
std::string sweep_csv(const std::vector<SweepRow>& rows);

std::string hex64(std::uint64_t value);
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace tchsim
