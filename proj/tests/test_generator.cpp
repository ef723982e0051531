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


#include <set>

#include "doctest.h"
#include "tchsim/generator.hpp"
#include "tchsim/operators.hpp"
#include "tchsim/scenarios.hpp"

using namespace tchsim;

namespace {

RuleSet jcm_rules(bool leaky) {
  RuleSet r;
  r.terms = tcm_terms(CavityParams{1.0, 1.0, {0.1}}, true);
  if (leaky) r.channels.push_back({ModeId::generic(0), false});
  r.cutoffs.set(ModeId::generic(0), 1);
  return r;
}

}  // namespace

TEST_CASE("closed single-atom cavity keeps only the excitation doublet") {
  const auto b = generate_basis(BasisState::reference({0}, 1, 1), jcm_rules(false));
  REQUIRE(b.size() == 2);
  CHECK(b[0].render() == "|0; a:1>");
  CHECK(b[1].render() == "|1; a:0>");
}

TEST_CASE("emission adds the vacuum") {
  const auto b = generate_basis(BasisState::reference({0}, 1, 1), jcm_rules(true));
  REQUIRE(b.size() == 3);
  CHECK(b.index_of(BasisState::reference({0}, 0, 1)).has_value());
  CHECK_FALSE(b.index_of(BasisState::reference({1}, 1, 1)).has_value());
}

TEST_CASE("basis generation is deterministic") {
  const ScenarioConfig c = builtin_scenario("fig4b");
  const std::string a = basis_to_json(build_model(c).basis);
  const std::string b = basis_to_json(build_model(c).basis);
  CHECK(a == b);
  const Basis parsed = basis_from_json(a);
  CHECK(basis_to_json(parsed) == a);
}

TEST_CASE("spin model basis: golden size") {
  const auto b = build_model(builtin_scenario("fig4b")).basis;
  CHECK(b.size() == 192);
  CHECK(b.size() * 10 <= 16384);
  std::set<std::string> unique;
  for (const auto& s : b) unique.insert(s.render());
  CHECK(unique.size() == b.size());
}

TEST_CASE("influx closure grows the basis") {
  ScenarioConfig c = builtin_scenario("fig4b");
  c.closure_influx = true;
  const auto b = build_model(c).basis;
  CHECK(b.size() == 2160);
}

TEST_CASE("no-spin scenario never reaches an up electron") {
  using namespace orbital;
  const auto b = build_model(builtin_scenario("fig4a")).basis;
  for (const auto& s : b) {
    CAPTURE(s.render());
    if (s.nuclei_apart()) {
      for (int atom : {0, 1}) {
        for (Level l : {Level::Excited, Level::Ground}) CHECK_FALSE(s.bit(atomic_bit(atom, l, Spin::Up)));
      }
    } else {
      for (Level l : {Level::Excited, Level::Ground}) CHECK_FALSE(s.bit(molecular_bit(l, Spin::Up)));
    }
  }
}

TEST_CASE("runaway closure names the mode") {
  RuleSet r;
  r.terms = tcm_terms(CavityParams{1.0, 1.0, {0.1}}, false);  // counter-rotating terms pump photons
  r.max_states = 40;
  try {
    generate_basis(BasisState::reference({0}, 0, 1), r);
    FAIL("expected BasisOverflow");
  } catch (const BasisOverflow& e) {
    CHECK(std::string(e.what()).find("cavity0") != std::string::npos);
  }
}

TEST_CASE("seed above cutoff is rejected") {
  CHECK_THROWS_AS(generate_basis(BasisState::reference({2}, 0, 1), jcm_rules(false)), std::invalid_argument);
}
