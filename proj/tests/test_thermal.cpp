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


#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "tchsim/thermal.hpp"

using namespace tchsim;

namespace {

ThermalSpec photon(double mu, int cutoff) { return ThermalSpec{ModeId::generic(0), mu, cutoff}; }

DenseMatrix vacuum(int cutoff) {
  DenseMatrix r = DenseMatrix::Zero(cutoff + 1, cutoff + 1);
  r(0, 0) = 1.0;
  return r;
}

}  // namespace

TEST_CASE("Gibbs weights are geometric") {
  const DenseMatrix g = gibbs_state(photon(0.5, 2));
  CHECK(g(0, 0).real() == doctest::Approx(4.0 / 7.0).epsilon(1e-15));
  CHECK(g(1, 1).real() == doctest::Approx(2.0 / 7.0).epsilon(1e-15));
  CHECK(g(2, 2).real() == doctest::Approx(1.0 / 7.0).epsilon(1e-15));
  CHECK(std::abs(g(0, 1)) == 0.0);
  const DenseMatrix cold = gibbs_state(photon(0.0, 3));
  CHECK(cold(0, 0).real() == 1.0);
}

TEST_CASE("mean photon number grows with mu") {
  double previous = -1.0;
  for (double mu : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9}) {
    const DenseMatrix g = gibbs_state(photon(mu, 6));
    double mean = 0.0;
    for (Eigen::Index p = 0; p < g.rows(); ++p) mean += static_cast<double>(p) * g(p, p).real();
    CHECK(mean > previous);
    previous = mean;
  }
}

TEST_CASE("tail mass and temperature map") {
  CHECK(tail_mass(0.5, 2) == doctest::Approx(0.25));
  CHECK(tail_mass(0.0, 4) == 0.0);
  CHECK(mu_to_temperature(0.0, 1.0) == 0.0);
  CHECK(temperature_to_mu(0.0, 1.0) == 0.0);
  for (double mu : {0.01, 0.2, 0.5, 0.95}) {
    const double t = mu_to_temperature(mu, 0.5);
    CHECK(t == doctest::Approx(0.5 / std::log(1.0 / mu)));
    CHECK(temperature_to_mu(t, 0.5) == doctest::Approx(mu).epsilon(1e-14));
  }
  CHECK_THROWS_AS(mu_to_temperature(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(mu_to_temperature(-0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gibbs_state(photon(1.2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(temperature_to_mu(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("detailed balance holds exactly at the Gibbs state") {
  const DenseMatrix g = gibbs_state(photon(0.3, 4));
  const BalanceReport b = check_detailed_balance(g, 1.0, 0.3);
  REQUIRE(b.mismatch.size() == 4);
  CHECK(b.max_mismatch <= 1e-15);
  const BalanceReport off = check_detailed_balance(vacuum(2), 1.0, 0.5);
  CHECK(off.mismatch[0] == doctest::Approx(0.5));
}

TEST_CASE("photon mode relaxes from the vacuum to diag(4/7, 2/7, 1/7)") {
  ProductSystem sys;
  sys.photon = photon(0.5, 2);
  sys.rho_photon = vacuum(2);
  const StationarityReport r = verify_product_stationarity(sys, 10000, 0.01);
  const double expected[] = {4.0 / 7.0, 2.0 / 7.0, 1.0 / 7.0};
  for (int p = 0; p < 3; ++p) CHECK(std::abs(r.final_photon(p, p).real() - expected[p]) <= 1e-4);
  CHECK(r.marginal_deviation <= 1e-4);
  CHECK(r.max_flow_mismatch <= 1e-6);
  CHECK(r.tail_mass == doctest::Approx(0.25));
}

TEST_CASE("Gibbs state is a fixed point of one step") {
  ProductSystem sys;
  sys.photon = photon(0.5, 3);
  const StationarityReport r = verify_product_stationarity(sys, 1, 0.1);
  CHECK(r.marginal_deviation <= 1e-12);
}

TEST_CASE("product with an uncoupled atom stays stationary and loses photon coherence") {
  ProductSystem sys;
  sys.photon = photon(0.4, 3);
  sys.omega_c = 1.0;
  sys.gamma_out = 0.5;
  sys.h_atom = DenseMatrix::Zero(2, 2);
  sys.h_atom(0, 1) = sys.h_atom(1, 0) = 0.2;
  sys.h_atom(1, 1) = 1.0;
  sys.rho_atom = DenseMatrix::Zero(2, 2);
  sys.rho_atom(0, 0) = 1.0;

  SUBCASE("starting from G x rho_atom") {
    const StationarityReport r = verify_product_stationarity(sys, 5000, 0.01, 100);
    CHECK(r.max_deviation <= 1e-6);
    CHECK(r.max_flow_mismatch <= 1e-6);
  }
  SUBCASE("starting from a coherent photon superposition") {
    DenseMatrix ph = DenseMatrix::Zero(4, 4);
    ph(0, 0) = ph(1, 1) = ph(0, 1) = ph(1, 0) = 0.5;
    sys.rho_photon = ph;
    const StationarityReport r = verify_product_stationarity(sys, 20000, 0.01, 100);
    REQUIRE(r.coherence.size() >= 2);
    CHECK(r.coherence.front() == doctest::Approx(0.5));
    CHECK(r.coherence.back() <= 1e-6);
    CHECK(r.marginal_deviation <= 1e-6);
  }
}

TEST_CASE("report JSON") {
  StationarityReport r;
  r.max_flow_mismatch = 1e-9;
  r.marginal_deviation = 2e-9;
  r.tail_mass = 0.25;
  const auto j = nlohmann::json::parse(thermal_report_json(r));
  CHECK(j.size() == 3);
  CHECK(j.at("tail_mass").get<double>() == 0.25);
  CHECK(j.contains("max_flow_mismatch"));
  CHECK(j.contains("marginal_deviation"));
}
