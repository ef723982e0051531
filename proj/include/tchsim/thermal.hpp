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

#include <string>
#include <vector>

#include "tchsim/lindblad.hpp"

namespace tchsim {

/// Thermal photon mode: influx/leakage ratio mu in [0, 1), Fock states
/// 0..cutoff.
struct ThermalSpec {
  ModeId mode;
  double mu = 0.0;
  int cutoff = 2;
  void validate() const;
};

/// diag(mu^p) normalized over p = 0..cutoff.
DenseMatrix gibbs_state(const ThermalSpec& spec);

/// Weight of the levels dropped by the cutoff, sum_{p > cutoff} mu^p
/// = mu^(cutoff+1) / (1 - mu), in the same units as the unnormalized mu^p.
double tail_mass(double mu, int cutoff);

/// T = omega_c / ln(1/mu) in units of hbar Omega_up / K; mu = 0 maps to T = 0.
double mu_to_temperature(double mu, double omega_c);
double temperature_to_mu(double temperature, double omega_c);

struct BalanceReport {
  std::vector<double> mismatch;  // level i <-> i+1
  double max_mismatch = 0.0;
};

/// Flow mismatch |(i+1) rho_ii gamma_in - (i+1) rho_{i+1,i+1} gamma_out| of a
/// single-mode photon density matrix.
BalanceReport check_detailed_balance(const DenseMatrix& rho, double gamma_out, double gamma_in);

/// Photon mode (frequency omega_c, thermal channel) next to an uncoupled
/// atomic part with Hamiltonian h_atom and state rho_atom.
struct ProductSystem {
  ThermalSpec photon;
  double omega_c = 1.0;
  double gamma_out = 1.0;
  DenseMatrix h_atom = DenseMatrix::Zero(1, 1);
  DenseMatrix rho_atom = DenseMatrix::Ones(1, 1);
  // Initial photon state; empty means gibbs_state(photon).
  DenseMatrix rho_photon;
};

struct StationarityReport {
  double marginal_deviation = 0.0;  // |rho_ph - G|_inf after the last step
  double max_deviation = 0.0;       // the same, maximized over samples
  double max_flow_mismatch = 0.0;   // of the final photon marginal
  double tail_mass = 0.0;
  std::vector<double> coherence;    // |rho_ph(0,1)| per sample
  DenseMatrix final_photon;
};

/// Evolves rho_photon (x) rho_atom with the split integrator and tracks the
/// photon marginal against the Gibbs state.
StationarityReport verify_product_stationarity(const ProductSystem& system, std::size_t steps,
                                               double dt, std::size_t stride = 1);

/// {"max_flow_mismatch": .., "marginal_deviation": .., "tail_mass": ..}
std::string thermal_report_json(const StationarityReport& report);

}  // namespace tchsim
