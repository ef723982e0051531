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

#include "tchsim/terms.hpp"

#include <algorithm>

namespace tchsim {

Op Op::adjoint() const {
  Op out = *this;
  switch (kind) {
    case Kind::Annihilate: out.kind = Kind::Create; break;
    case Kind::Create: out.kind = Kind::Annihilate; break;
    case Kind::Transition: out.transition = transition.adjoint(); break;
    case Kind::Project: break;
  }
  return out;
}

std::vector<Op> Term::adjoint_ops() const {
  std::vector<Op> out;
  out.reserve(ops.size());
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) out.push_back(it->adjoint());
  return out;
}

bool gate_holds(const BasisState& state, Gate gate) {
  switch (gate) {
    case Gate::NucleiTogether: return !state.nuclei_apart();
    case Gate::NucleiApart: return state.nuclei_apart();
    case Gate::BondFormed: return !state.bond_broken();
    case Gate::BondBroken: return state.bond_broken();
  }
  return false;
}

std::optional<LadderResult> apply_ops(const BasisState& state, const std::vector<Op>& ops,
                                      const Cutoffs& cutoffs) {
  LadderResult current{1.0, state};
  for (const Op& op : ops) {
    switch (op.kind) {
      case Op::Kind::Annihilate: {
        auto r = apply_annihilate(current.state, op.mode);
        if (!r) return std::nullopt;
        current = LadderResult{current.amplitude * r->amplitude, std::move(r->state)};
        break;
      }
      case Op::Kind::Create: {
        auto r = apply_create(current.state, op.mode, cutoffs.of(op.mode));
        if (!r) return std::nullopt;
        current = LadderResult{current.amplitude * r->amplitude, std::move(r->state)};
        break;
      }
      case Op::Kind::Transition: {
        auto r = apply_transition(current.state, op.transition);
        if (!r) return std::nullopt;
        current = LadderResult{current.amplitude * r->sign, std::move(r->state)};
        break;
      }
      case Op::Kind::Project:
        if (!gate_holds(current.state, op.gate)) return std::nullopt;
        break;
    }
  }
  return current;
}

}  // namespace tchsim
