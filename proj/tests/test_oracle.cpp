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


// Sparse Hamiltonians over generated bases against the dense Kronecker-product
// construction restricted to the same states.

#include "doctest.h"
#include "tchsim/generator.hpp"
#include "tchsim/operators.hpp"
#include "tchsim/scenarios.hpp"
#include "tchsim/tensor.hpp"

using namespace tchsim;

namespace {

constexpr double kTol = 1e-12;

double restricted_mismatch(const TensorModel& oracle, const Basis& basis, const SparseOperator& h) {
  const DenseMatrix ref = oracle.restrict_to(product_indices(oracle, basis));
  return (ref - h.to_dense()).cwiseAbs().maxCoeff();
}

RuleSet cavity_rules(const std::vector<Term>& terms, int cavities, int cutoff, bool leaky) {
  RuleSet r;
  r.terms = terms;
  for (int c = 0; c < cavities; ++c) {
    r.cutoffs.set(ModeId::generic(c), cutoff);
    if (leaky) r.channels.push_back({ModeId::generic(c), false});
  }
  return r;
}

}  // namespace

TEST_CASE("single atom, one photon: the 4x4 tensor-product matrix") {
  const double w = 1.0, g = 0.05;
  const TensorModel oracle = tensor_tcm(CavityParams{w, w, {g}}, true, 1);
  REQUIRE(oracle.dim() == 4);
  // Rows |p>|a>: |0>|0>, |0>|1>, |1>|0>, |1>|1>.
  DenseMatrix expected(4, 4);
  expected << 0, 0, 0, 0,
              0, w, g, 0,
              0, g, w, 0,
              0, 0, 0, 2 * w;
  CHECK((oracle.to_dense() - expected).cwiseAbs().maxCoeff() <= kTol);

  const std::vector<BasisState> all{BasisState::reference({0}, 0, 1), BasisState::reference({0}, 1, 1),
                                    BasisState::reference({1}, 0, 1), BasisState::reference({1}, 1, 1)};
  const Basis full = generate_basis(all, cavity_rules(tcm_terms(CavityParams{w, w, {g}}, true), 1, 1, false));
  REQUIRE(full.size() == 4);
  CHECK(restricted_mismatch(oracle, full, build_tcm(1, w, w, {g}, true, full)) <= kTol);
}

TEST_CASE("leaky single atom: the 3x3 reduction") {
  const double w = 1.0, g = 0.05;
  const auto terms = tcm_terms(CavityParams{w, w, {g}}, true);
  const Basis b = generate_basis(BasisState::reference({0}, 1, 1), cavity_rules(terms, 1, 1, true));
  REQUIRE(b.size() == 3);
  const SparseOperator h = build_tcm(1, w, w, {g}, true, b);
  // Order |0>|0>, |0>|1>, |1>|0>.
  const std::size_t idx[] = {*b.index_of(BasisState::reference({0}, 0, 1)),
                             *b.index_of(BasisState::reference({0}, 1, 1)),
                             *b.index_of(BasisState::reference({1}, 0, 1))};
  DenseMatrix expected(3, 3);
  expected << 0, 0, 0,
              0, w, g,
              0, g, w;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) CHECK(std::abs(h.entry(idx[r], idx[c]) - expected(r, c)) <= kTol);
  }
  CHECK(restricted_mismatch(tensor_tcm(CavityParams{w, w, {g}}, true, 1), b, h) <= kTol);
}

TEST_CASE("closed single atom: the 2x2 reduction") {
  const double w = 1.0, g = 0.05;
  const auto terms = tcm_terms(CavityParams{w, w, {g}}, true);
  const Basis b = generate_basis(BasisState::reference({0}, 1, 1), cavity_rules(terms, 1, 1, false));
  REQUIRE(b.size() == 2);
  const DenseMatrix h = build_tcm(1, w, w, {g}, true, b).to_dense();
  DenseMatrix expected(2, 2);
  expected << w, g,
              g, w;
  CHECK((h - expected).cwiseAbs().maxCoeff() <= kTol);
}

TEST_CASE("two atoms in one cavity") {
  for (bool rwa : {true, false}) {
    for (int cutoff : {1, 2}) {
      CAPTURE(rwa);
      CAPTURE(cutoff);
      const CavityParams cav{1.0, 0.9, {0.02, 0.03}};
      const TensorModel oracle = tensor_tcm(cav, rwa, cutoff);
      const Basis b = generate_basis(BasisState::reference({0}, 0b01, 2),
                                     cavity_rules(tcm_terms(cav, rwa), 1, cutoff, true));
      CHECK(restricted_mismatch(oracle, b, build_tcm(2, cav.omega_c, cav.omega_a, cav.g, rwa, b)) <= kTol);
      if (!rwa) CHECK(b.size() == oracle.dim());
    }
  }
}

TEST_CASE("two coupled cavities") {
  const std::vector<CavityParams> cavs{{1.0, 1.0, {0.02}}, {1.1, 1.0, {0.03}}};
  const TensorModel oracle = tensor_tchm(cavs, 0.01, true, 1);
  const Basis b = generate_basis(BasisState::reference({0, 0}, 0b01, 2),
                                 cavity_rules(tchm_terms(cavs, 0.01, true), 2, 1, true));
  CHECK(b.size() > 2);
  CHECK(restricted_mismatch(oracle, b, build_tchm(cavs, 0.01, true, b)) <= kTol);
}

TEST_CASE("hydrogen models at photon cutoff 1") {
  struct Case {
    const char* scenario;
    bool closure_influx;
    double zeta0;
  };
  for (const Case& c : {Case{"fig4a", true, 0.0}, Case{"fig4b", false, 0.0}, Case{"fig4b", false, 0.003},
                        Case{"fig9", true, 0.0}}) {
    CAPTURE(c.scenario);
    CAPTURE(c.zeta0);
    ScenarioConfig cfg = builtin_scenario(c.scenario);
    cfg.closure_influx = c.closure_influx;
    cfg.params.zeta0 = c.zeta0;
    for (ModeId mode : model_modes(cfg)) cfg.cutoffs.set(mode, 1);
    const BuiltModel m = build_model(cfg);
    const Cutoffs cut = resolve_cutoffs(cfg);
    for (ModeId mode : model_modes(cfg)) CHECK(cut.of(mode) == 1);
    const TensorModel oracle =
        cfg.model == ModelKind::CovalentBond
            ? tensor_covalent_bond(cfg.params, cut)
            : tensor_assoc_dissoc(cfg.params, cfg.model == ModelKind::AssocDissocSpin, cut);
    if (cfg.model == ModelKind::AssocDissocSpin) CHECK(oracle.dim() == 16384U);
    CHECK(restricted_mismatch(oracle, m.basis, m.hamiltonian) <= kTol);
  }
}
