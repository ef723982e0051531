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

#include "tchsim/generator.hpp"

#include <algorithm>
#include <unordered_set>

#include "json.hpp"

namespace tchsim {

Basis::Basis(std::vector<BasisState> states, Cutoffs cutoffs)
    : states_(std::move(states)), cutoffs_(std::move(cutoffs)) {
  index_.reserve(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (!index_.emplace(states_[i], i).second) {
      throw std::invalid_argument("duplicate state in basis: " + states_[i].render());
    }
  }
}

std::optional<std::size_t> Basis::index_of(const BasisState& state) const {
  auto it = index_.find(state);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> index_of(const Basis& basis, const BasisState& state) {
  return basis.index_of(state);
}

namespace {

[[noreturn]] void overflow(const std::vector<BasisState>& found, const RuleSet& rules) {
  // Name the mode whose occupation grew the most.
  std::string worst = "(none)";
  int worst_occupation = -1;
  if (!found.empty()) {
    const auto modes = variant_modes(found.front().variant(), found.front().photon_count());
    for (const auto& s : found) {
      for (std::size_t slot = 0; slot < modes.size(); ++slot) {
        if (s.occupation(static_cast<int>(slot)) > worst_occupation) {
          worst_occupation = s.occupation(static_cast<int>(slot));
          worst = modes[slot].name();
        }
      }
    }
  }
  throw BasisOverflow("basis closure exceeded " + std::to_string(rules.max_states) +
                      " states; runaway mode " + worst + " reached occupation " +
                      std::to_string(worst_occupation) + " (set a cutoff for it)");
}

}  // namespace

Basis generate_basis(std::span<const BasisState> seeds, const RuleSet& rules) {
  std::vector<BasisState> order;
  std::unordered_set<BasisState> seen;

  std::vector<BasisState> frontier;
  for (const auto& s : seeds) {
    for (const auto& [mode, cutoff] : rules.cutoffs.limits()) {
      auto slot = photon_slot(s.variant(), mode);
      if (slot && *slot < s.photon_count() && s.occupation(*slot) > cutoff) {
        throw std::invalid_argument("seed " + s.render() + " exceeds cutoff of " + mode.name());
      }
    }
    if (seen.insert(s).second) {
      order.push_back(s);
      frontier.push_back(s);
    }
  }

  std::vector<std::vector<Op>> forward;
  for (const auto& term : rules.terms) {
    if (term.coefficient == std::complex<double>(0.0)) continue;
    forward.push_back(term.ops);
    if (term.add_adjoint) forward.push_back(term.adjoint_ops());
  }

  while (!frontier.empty()) {
    std::vector<BasisState> next;
    auto visit = [&](BasisState candidate) {
      if (seen.insert(candidate).second) {
        next.push_back(std::move(candidate));
        if (order.size() + next.size() > rules.max_states) {
          order.insert(order.end(), next.begin(), next.end());
          overflow(order, rules);
        }
      }
    };
    for (const auto& s : frontier) {
      for (const auto& ops : forward) {
        if (auto r = apply_ops(s, ops, rules.cutoffs)) visit(std::move(r->state));
      }
      for (const auto& ch : rules.channels) {
        if (auto r = apply_annihilate(s, ch.mode)) visit(std::move(r->state));
        if (ch.influx) {
          if (auto r = apply_create(s, ch.mode, rules.cutoffs.of(ch.mode))) {
            visit(std::move(r->state));
          }
        }
      }
    }
    std::vector<std::pair<std::string, BasisState>> keyed;
    keyed.reserve(next.size());
    for (auto& s : next) keyed.emplace_back(s.render(), std::move(s));
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    frontier.clear();
    for (auto& [key, s] : keyed) {
      order.push_back(s);
      frontier.push_back(std::move(s));
    }
    if (order.size() > rules.max_states) overflow(order, rules);
  }
  return Basis(std::move(order), rules.cutoffs);
}

Basis generate_basis(const BasisState& initial, const RuleSet& rules) {
  return generate_basis(std::span<const BasisState>(&initial, 1), rules);
}

std::string basis_to_json(const Basis& basis) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : basis) arr.push_back(s.render());
  return arr.dump(1);
}

Basis basis_from_json(const std::string& text, Cutoffs cutoffs) {
  auto arr = nlohmann::json::parse(text);
  if (!arr.is_array()) throw std::invalid_argument("basis JSON must be an array of strings");
  std::vector<BasisState> states;
  states.reserve(arr.size());
  for (const auto& item : arr) states.push_back(parse_basis_state(item.get<std::string>()));
  return Basis(std::move(states), std::move(cutoffs));
}

}  // namespace tchsim
