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
#include "tchsim/lindblad.hpp"
#include "tchsim/scenarios.hpp"

using namespace tchsim;

namespace {

ScenarioConfig jcm(double g, double gamma, double mu, int photons, bool atom_excited) {
  ScenarioConfig c;
  c.name = "jcm";
  c.model = ModelKind::JCM;
  c.cavities = {CavityParams{1.0, 1.0, {g}}};
  c.initial = {{1.0, BasisState::reference({photons}, atom_excited ? 1U : 0U, 1)}};
  if (gamma > 0.0) c.channels = {{ModeId::generic(0), gamma, mu}};
  c.cutoffs.set(ModeId::generic(0), 2);
  return c;
}

double min_eig_dense(const DenseMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(0.5 * (rho + rho.adjoint()));
  return es.eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("block propagator matches the dense reference step") {
  for (const char* name : {"fig4b", "fig9"}) {
    for (bool influx_closure : {false, true}) {
      CAPTURE(name);
      CAPTURE(influx_closure);
      ScenarioConfig cfg = builtin_scenario(name);
      cfg.closure_influx = influx_closure;
      if (cfg.model == ModelKind::AssocDissocSpin && influx_closure) continue;  // 2160 states: too slow densely
      const BuiltModel m = build_model(cfg);
      DenseMatrix rho = m.rho0;
      const ExactUnitary u(m.hamiltonian, cfg.dt);
      Propagator p(m.hamiltonian, m.channels, cfg.dt, m.rho0);
      for (int i = 0; i < 25; ++i) {
        step(u, m.channels, rho, cfg.dt);
        p.step();
      }
      CHECK((rho - p.density()).cwiseAbs().maxCoeff() <= 1e-11);
      CHECK(p.min_eigenvalue() == doctest::Approx(min_eig_dense(rho)).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("closed Rabi oscillation follows cos^2(g t)") {
  const double g = 0.05;
  ScenarioConfig cfg = jcm(g, 0.0, 0.0, 1, false);
  const double period = M_PI / g;
  cfg.steps = 400;
  cfg.dt = period / static_cast<double>(cfg.steps);
  cfg.stride = 1;
  const ScenarioResult r = run_scenario(cfg);
  REQUIRE(r.basis_size == 2);
  double worst = 0.0;
  for (const Sample& s : r.series.samples) {
    const double c = std::cos(g * s.time);
    worst = std::max(worst, std::abs(s.values[0] - c * c));
  }
  CHECK(worst <= 1e-6);
  CHECK(r.series.samples.size() == 401);
}

TEST_CASE("trace, Hermiticity and positivity at the default step") {
  ScenarioConfig cfg = builtin_scenario("fig4b");
  cfg.steps = 2000;
  const ScenarioResult r = run_scenario(cfg);
  CHECK(cfg.dt == 10.0);
  CHECK(r.series.max_step_drift <= 1e-6);
  CHECK(r.series.max_hermiticity_deviation <= 1e-12);
  CHECK(r.series.min_eig >= -1e-6);
  for (const Sample& s : r.series.samples) CHECK(s.values[2] + s.values[3] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("dissipators are trace-free, including at the cutoff") {
  const BuiltModel m = build_model(jcm(0.05, 0.1, 0.5, 2, true));
  const auto n = static_cast<Eigen::Index>(m.basis.size());
  DenseMatrix rho = DenseMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) rho(i, i) = 1.0 / static_cast<double>(n);
  rho(0, 1) = rho(1, 0) = 0.05;
  const auto& ch = m.channels.at(0);
  CHECK(std::abs(dissipator(ch, rho).trace()) <= 1e-15);
  CHECK(std::abs(influx(ch, rho).trace()) <= 1e-15);
}

TEST_CASE("one step agrees with the Lindblad generator to first order") {
  ScenarioConfig cfg = jcm(0.0, 0.3, 0.4, 2, true);
  const BuiltModel m = build_model(cfg);
  const auto n = static_cast<Eigen::Index>(m.basis.size());
  DenseMatrix rho = DenseMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) rho(i, i) = 1.0 / static_cast<double>(n);
  rho(0, n - 1) = Complex(0.1, 0.05);
  rho(n - 1, 0) = std::conj(rho(0, n - 1));
  const SparseOperator zero(m.basis.size());
  DenseMatrix gen = DenseMatrix::Zero(n, n);
  for (const auto& ch : m.channels) gen += dissipator(ch, rho) + influx(ch, rho);
  double previous = 0.0;
  for (double dt : {1e-2, 1e-3}) {
    const DenseMatrix next = step(zero, m.channels, rho, dt);
    const double err = ((next - rho) / dt - gen).cwiseAbs().maxCoeff();
    CAPTURE(dt);
    CHECK(err <= 0.1 * dt);
    if (previous > 0.0) CHECK(err < 0.2 * previous);  // error shrinks linearly
    previous = err;
  }
}

TEST_CASE("positivity holds for large rate * dt") {
  ScenarioConfig cfg = builtin_scenario("fig9");
  cfg.steps = 3000;
  const ScenarioResult r = run_scenario(cfg);
  CHECK(r.series.min_eig >= -1e-12);
}

TEST_CASE("errors") {
  const BuiltModel m = build_model(jcm(0.05, 0.1, 0.0, 1, false));
  SUBCASE("trace drift") {
    DenseMatrix bad = 1.5 * m.rho0;
    Propagator p(m.hamiltonian, m.channels, 1.0, bad);
    CHECK_THROWS_AS(p.step(), TraceDriftError);
    CHECK_THROWS_AS(step(m.hamiltonian, m.channels, bad, 1.0), TraceDriftError);
  }
  SUBCASE("influx at or above leakage") {
    DissipationChannel ch = m.channels[0];
    ch.gamma_in = ch.gamma_out;
    CHECK_THROWS_AS(ch.validate(), std::invalid_argument);
  }
  SUBCASE("step too large for the rates") {
    CHECK_THROWS_AS(Propagator(m.hamiltonian, m.channels, 20.0, m.rho0), std::invalid_argument);
  }
  SUBCASE("non-monomial jump") {
    DissipationChannel ch = m.channels[0];
    ch.jump.add(0, 0, 0.5);
    ch.jump.add(1, 0, 0.5);
    ch.jump.normalize();
    CHECK_THROWS_AS(Propagator(m.hamiltonian, {ch}, 1.0, m.rho0), std::invalid_argument);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(Propagator(m.hamiltonian, m.channels, 1.0, DenseMatrix::Identity(7, 7)), std::invalid_argument);
  }
}

TEST_CASE("CSV layout") {
  ScenarioConfig cfg = builtin_scenario("fig4a");
  cfg.steps = 45;
  const ScenarioResult r = run_scenario(cfg);
  const std::string csv = to_csv(r.series);
  CHECK(csv.rfind("step,time,P_initial,P_final,P_A,P_D,trace_drift,min_eig\n0,0,1,0,0,1,", 0) == 0);
  // Rows at 0, 20, 40 and the last step.
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 5);
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
}
