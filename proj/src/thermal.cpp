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


#include "tchsim/thermal.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace tchsim {

void ThermalSpec::validate() const {
  if (!(mu >= 0.0) || !(mu < 1.0)) {
    throw std::invalid_argument("thermal state needs 0 <= mu < 1 (got " + std::to_string(mu) + ")");
  }
  if (cutoff < 0) throw std::invalid_argument("cutoff must be non-negative");
}

DenseMatrix gibbs_state(const ThermalSpec& spec) {
  spec.validate();
  const auto n = static_cast<Eigen::Index>(spec.cutoff + 1);
  DenseMatrix g = DenseMatrix::Zero(n, n);
  double w = 1.0, norm = 0.0;
  for (Eigen::Index p = 0; p < n; ++p) {
    g(p, p) = w;
    norm += w;
    w *= spec.mu;
  }
  return g / norm;
}

double tail_mass(double mu, int cutoff) {
  ThermalSpec{ModeId{}, mu, cutoff}.validate();
  return std::pow(mu, cutoff + 1) / (1.0 - mu);
}

double mu_to_temperature(double mu, double omega_c) {
  if (!(mu >= 0.0) || !(mu < 1.0)) throw std::invalid_argument("mu must lie in [0, 1)");
  if (!(omega_c > 0.0)) throw std::invalid_argument("mode frequency must be positive");
  if (mu == 0.0) return 0.0;
  return omega_c / std::log(1.0 / mu);
}

double temperature_to_mu(double temperature, double omega_c) {
  if (!(temperature >= 0.0)) throw std::invalid_argument("temperature must be non-negative");
  if (!(omega_c > 0.0)) throw std::invalid_argument("mode frequency must be positive");
  if (temperature == 0.0) return 0.0;
  return std::exp(-omega_c / temperature);
}

BalanceReport check_detailed_balance(const DenseMatrix& rho, double gamma_out, double gamma_in) {
  BalanceReport r;
  for (Eigen::Index i = 0; i + 1 < rho.rows(); ++i) {
    const double k = static_cast<double>(i + 1);
    const double up = k * rho(i, i).real() * gamma_in;
    const double down = k * rho(i + 1, i + 1).real() * gamma_out;
    r.mismatch.push_back(std::abs(up - down));
    r.max_mismatch = std::max(r.max_mismatch, r.mismatch.back());
  }
  return r;
}

namespace {

DenseMatrix photon_marginal(const DenseMatrix& rho, Eigen::Index photon_dim, Eigen::Index atom_dim) {
  DenseMatrix m = DenseMatrix::Zero(photon_dim, photon_dim);
  for (Eigen::Index p = 0; p < photon_dim; ++p) {
    for (Eigen::Index q = 0; q < photon_dim; ++q) {
      for (Eigen::Index a = 0; a < atom_dim; ++a) m(p, q) += rho(p * atom_dim + a, q * atom_dim + a);
    }
  }
  return m;
}

}  // namespace

StationarityReport verify_product_stationarity(const ProductSystem& sys, std::size_t steps,
                                               double dt, std::size_t stride) {
  sys.photon.validate();
  if (stride == 0) throw std::invalid_argument("stride must be at least 1");
  const Eigen::Index np = sys.photon.cutoff + 1;
  const Eigen::Index na = sys.h_atom.rows();
  if (sys.h_atom.cols() != na || sys.rho_atom.rows() != na || sys.rho_atom.cols() != na) {
    throw std::invalid_argument("atomic Hamiltonian and state sizes differ");
  }
  const DenseMatrix gibbs = gibbs_state(sys.photon);
  const DenseMatrix rho_ph = sys.rho_photon.size() == 0 ? gibbs : sys.rho_photon;
  if (rho_ph.rows() != np || rho_ph.cols() != np) {
    throw std::invalid_argument("initial photon state does not match the cutoff");
  }

  const std::size_t dim = static_cast<std::size_t>(np * na);
  SparseOperator h(dim);
  SparseOperator a(dim);
  for (Eigen::Index p = 0; p < np; ++p) {
    for (Eigen::Index x = 0; x < na; ++x) {
      const auto row = static_cast<std::size_t>(p * na + x);
      h.add(row, row, sys.omega_c * static_cast<double>(p));
      for (Eigen::Index y = 0; y < na; ++y) {
        if (sys.h_atom(x, y) != Complex(0.0)) h.add(row, static_cast<std::size_t>(p * na + y), sys.h_atom(x, y));
      }
      if (p > 0) a.add(static_cast<std::size_t>((p - 1) * na + x), row, std::sqrt(static_cast<double>(p)));
    }
  }
  h.normalize();
  a.normalize();
  DissipationChannel ch{a, sys.gamma_out, sys.photon.mu * sys.gamma_out, sys.photon.mode.name()};

  DenseMatrix rho0(np * na, np * na);
  for (Eigen::Index p = 0; p < np; ++p) {
    for (Eigen::Index q = 0; q < np; ++q) rho0.block(p * na, q * na, na, na) = rho_ph(p, q) * sys.rho_atom;
  }

  Propagator prop(h, {ch}, dt, rho0);
  StationarityReport r;
  auto sample = [&] {
    const DenseMatrix m = photon_marginal(prop.density(), np, na);
    r.max_deviation = std::max(r.max_deviation, (m - gibbs).cwiseAbs().maxCoeff());
    r.coherence.push_back(np > 1 ? std::abs(m(0, 1)) : 0.0);
    return m;
  };
  sample();
  for (std::size_t n = 1; n <= steps; ++n) {
    prop.step();
    if (n % stride == 0 && n != steps) sample();
  }
  r.final_photon = sample();
  r.marginal_deviation = (r.final_photon - gibbs).cwiseAbs().maxCoeff();
  r.max_flow_mismatch = check_detailed_balance(r.final_photon, ch.gamma_out, ch.gamma_in).max_mismatch;
  r.tail_mass = tail_mass(sys.photon.mu, sys.photon.cutoff);
  return r;
}

std::string thermal_report_json(const StationarityReport& report) {
  nlohmann::ordered_json j;
  j["max_flow_mismatch"] = report.max_flow_mismatch;
  j["marginal_deviation"] = report.marginal_deviation;
  j["tail_mass"] = report.tail_mass;
  return j.dump(2) + "\n";
}

}  // namespace tchsim
