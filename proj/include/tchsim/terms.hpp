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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tchsim/fock.hpp"

namespace tchsim {

/// Per-mode photon (or phonon) truncation. Modes without an entry are bounded
/// only by the 8-bit occupation storage.
class Cutoffs {
 public:
  static constexpr int kUnbounded = 255;

  Cutoffs() = default;
  Cutoffs(std::initializer_list<std::pair<const ModeId, int>> init) : limits_(init) {}

  int of(ModeId mode) const {
    auto it = limits_.find(mode);
    return it == limits_.end() ? kUnbounded : it->second;
  }
  void set(ModeId mode, int cutoff) { limits_[mode] = cutoff; }
  bool has(ModeId mode) const { return limits_.contains(mode); }
  const std::map<ModeId, int>& limits() const { return limits_; }

  friend bool operator==(const Cutoffs&, const Cutoffs&) = default;

 private:
  std::map<ModeId, int> limits_;
};

/// Projectors that gate a term onto one sector.
enum class Gate : std::uint8_t { NucleiTogether, NucleiApart, BondFormed, BondBroken };

/// One elementary factor of an operator product.
struct Op {
  enum class Kind : std::uint8_t { Annihilate, Create, Transition, Project };
  Kind kind = Kind::Project;
  ModeId mode{};
  TransitionId transition{};
  Gate gate = Gate::NucleiTogether;

  static Op annihilate(ModeId m) { return {Kind::Annihilate, m, {}, {}}; }
  static Op create(ModeId m) { return {Kind::Create, m, {}, {}}; }
  static Op transition_op(TransitionId t) { return {Kind::Transition, {}, t, {}}; }
  static Op project(Gate g) { return {Kind::Project, {}, {}, g}; }

  Op adjoint() const;
};

/// coefficient * (ops applied first to last), plus its Hermitian conjugate
/// when `add_adjoint` is set. Diagonal energies are self-adjoint products
/// (number operators, projectors) and carry add_adjoint = false.
struct Term {
  std::complex<double> coefficient;
  std::vector<Op> ops;
  bool add_adjoint = false;
  std::string label;

  /// Ops of the Hermitian-conjugate product, in application order.
  std::vector<Op> adjoint_ops() const;
};

/// Applies `ops` in order; the amplitude is the product of ladder factors.
std::optional<LadderResult> apply_ops(const BasisState& state, const std::vector<Op>& ops,
                                      const Cutoffs& cutoffs);

/// Evaluates a gate on a state.
bool gate_holds(const BasisState& state, Gate gate);

}  // namespace tchsim
