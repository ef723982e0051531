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

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "tchsim/fock.hpp"
#include "tchsim/terms.hpp"

namespace tchsim {

/// Jump operators that take part in closure: emission always applies a,
/// influx (when enabled) applies a^dagger clipped at the mode cutoff.
struct ChannelRule {
  ModeId mode;
  bool influx = false;
};

struct RuleSet {
  std::vector<Term> terms;
  std::vector<ChannelRule> channels;
  Cutoffs cutoffs;
  std::size_t max_states = 1'000'000;
};

/// Ordered set of reachable states with O(1) index lookup. Immutable once
/// generated; carries the cutoffs it was closed under so that operator
/// builders truncate identically.
class Basis {
 public:
  Basis() = default;
  Basis(std::vector<BasisState> states, Cutoffs cutoffs);

  std::size_t size() const { return states_.size(); }
  const BasisState& operator[](std::size_t i) const { return states_[i]; }
  const std::vector<BasisState>& states() const { return states_; }
  const Cutoffs& cutoffs() const { return cutoffs_; }

  std::optional<std::size_t> index_of(const BasisState& state) const;

  auto begin() const { return states_.begin(); }
  auto end() const { return states_.end(); }

 private:
  std::vector<BasisState> states_;
  std::unordered_map<BasisState, std::size_t> index_;
  Cutoffs cutoffs_;
};

class BasisOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Breadth-first closure of `seeds` under every nonzero term (both
/// directions) and every channel jump. States discovered at the same depth are
/// ordered by their canonical rendering; seeds keep the order given.
Basis generate_basis(std::span<const BasisState> seeds, const RuleSet& rules);
Basis generate_basis(const BasisState& initial, const RuleSet& rules);

std::optional<std::size_t> index_of(const Basis& basis, const BasisState& state);

/// JSON array of canonical state strings, in basis order.
std::string basis_to_json(const Basis& basis);
Basis basis_from_json(const std::string& text, Cutoffs cutoffs = {});

}  // namespace tchsim
