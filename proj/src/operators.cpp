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

#include "tchsim/operators.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace tchsim {

SparseOperator::SparseOperator(std::size_t dim, std::vector<Triplet> entries)
    : dim_(dim), entries_(std::move(entries)), normalized_(false) {
  for (const auto& t : entries_) {
    if (t.row >= dim_ || t.col >= dim_) throw std::out_of_range("operator entry out of range");
  }
  normalize();
}

void SparseOperator::add(std::size_t row, std::size_t col, Complex value) {
  if (row >= dim_ || col >= dim_) throw std::out_of_range("operator entry out of range");
  entries_.push_back({row, col, value});
  normalized_ = false;
}

SparseOperator& SparseOperator::normalize() {
  std::sort(entries_.begin(), entries_.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<Triplet> merged;
  merged.reserve(entries_.size());
  for (const auto& t : entries_) {
    if (!merged.empty() && merged.back().row == t.row && merged.back().col == t.col) {
      merged.back().value += t.value;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Triplet& t) { return t.value == Complex(0.0); });
  entries_ = std::move(merged);
  normalized_ = true;
  return *this;
}

Complex SparseOperator::entry(std::size_t row, std::size_t col) const {
  if (!normalized_) throw std::logic_error("SparseOperator::entry needs normalize() first");
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{row, col},
                             [](const Triplet& t, const std::pair<std::size_t, std::size_t>& k) {
                               return t.row != k.first ? t.row < k.first : t.col < k.second;
                             });
  if (it != entries_.end() && it->row == row && it->col == col) return it->value;
  return 0.0;
}

double SparseOperator::hermiticity_deviation() const {
  SparseOperator copy = *this;
  if (!copy.normalized_) copy.normalize();
  double worst = 0.0;
  for (const auto& t : copy.entries_) {
    worst = std::max(worst, std::abs(t.value - std::conj(copy.entry(t.col, t.row))));
  }
  return worst;
}

DenseMatrix SparseOperator::to_dense() const {
  DenseMatrix m = DenseMatrix::Zero(static_cast<Eigen::Index>(dim_),
                                    static_cast<Eigen::Index>(dim_));
  for (const auto& t : entries_) {
    m(static_cast<Eigen::Index>(t.row), static_cast<Eigen::Index>(t.col)) += t.value;
  }
  return m;
}

Eigen::SparseMatrix<Complex> SparseOperator::to_eigen() const {
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(entries_.size());
  for (const auto& t : entries_) {
    trips.emplace_back(static_cast<int>(t.row), static_cast<int>(t.col), t.value);
  }
  Eigen::SparseMatrix<Complex> m(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

SparseOperator SparseOperator::adjoint() const {
  SparseOperator out(dim_);
  for (const auto& t : entries_) out.add(t.col, t.row, std::conj(t.value));
  return out.normalize();
}

void ModelParams::validate() const {
  const double values[] = {freq_mol_up, freq_mol_down, freq_at_up, freq_at_down, freq_spin,
                           freq_phonon, g_mol_up,      g_mol_down, g_at_up,      g_at_down,
                           g_spin,      g_phonon,      zeta,       zeta0,        zeta1,
                           zeta2};
  for (double v : values) {
    if (!(v >= 0.0)) throw std::invalid_argument("model parameters must be non-negative");
  }
}

namespace {

Term diagonal(double coefficient, std::vector<Op> ops, std::string label) {
  return Term{coefficient, std::move(ops), false, std::move(label)};
}

Term hopping(double coefficient, std::vector<Op> ops, std::string label) {
  return Term{coefficient, std::move(ops), true, std::move(label)};
}

std::vector<Op> number(ModeId mode, std::optional<Gate> gate = std::nullopt) {
  std::vector<Op> ops;
  if (gate) ops.push_back(Op::project(*gate));
  ops.push_back(Op::annihilate(mode));
  ops.push_back(Op::create(mode));
  return ops;
}

// sigma^dagger sigma for the relaxation `relax`.
std::vector<Op> excited_projector(TransitionId relax, std::optional<Gate> gate = std::nullopt) {
  std::vector<Op> ops;
  if (gate) ops.push_back(Op::project(*gate));
  ops.push_back(Op::transition_op(relax));
  ops.push_back(Op::transition_op(relax.adjoint()));
  return ops;
}

// a^dagger sigma (the adjoint a sigma^dagger is added by the term).
std::vector<Op> emission(TransitionId relax, ModeId mode, std::optional<Gate> gate = std::nullopt) {
  std::vector<Op> ops;
  if (gate) ops.push_back(Op::project(*gate));
  ops.push_back(Op::transition_op(relax));
  ops.push_back(Op::create(mode));
  return ops;
}

std::string spin_name(Spin s) { return s == Spin::Up ? "up" : "down"; }

}  // namespace

std::vector<Term> assoc_dissoc_terms(const ModelParams& p, bool with_spin) {
  p.validate();
  std::vector<Term> terms;
  const Gate mol = Gate::NucleiTogether;
  const Gate at = Gate::NucleiApart;

  for (Spin s : {Spin::Up, Spin::Down}) {
    const double w = s == Spin::Up ? p.freq_mol_up : p.freq_mol_down;
    const double g = s == Spin::Up ? p.g_mol_up : p.g_mol_down;
    const auto relax = TransitionId::molecular_relax(s);
    terms.push_back(diagonal(w, number(ModeId::molecular(s), mol), "A.field." + spin_name(s)));
    terms.push_back(diagonal(w, excited_projector(relax, mol), "A.mol." + spin_name(s)));
    terms.push_back(hopping(g, emission(relax, ModeId::molecular(s), mol), "A.int." + spin_name(s)));
  }

  for (Spin s : {Spin::Up, Spin::Down}) {
    const double w = s == Spin::Up ? p.freq_at_up : p.freq_at_down;
    const double g = s == Spin::Up ? p.g_at_up : p.g_at_down;
    terms.push_back(diagonal(w, number(ModeId::atomic(s), at), "D.field." + spin_name(s)));
    for (int atom : {0, 1}) {
      const auto relax = TransitionId::atomic_relax(atom, s);
      const std::string tag = spin_name(s) + ".atom" + std::to_string(atom + 1);
      terms.push_back(diagonal(w, excited_projector(relax, at), "D.at." + tag));
      terms.push_back(hopping(g, emission(relax, ModeId::atomic(s), at), "D.int." + tag));
    }
  }

  // Tunnelling: each molecular pattern (one up, one down electron) couples to
  // both atomic placements of an excited up/down pair.
  struct Pattern {
    Level up;
    Level down;
    double zeta;
    const char* name;
  };
  const Pattern patterns[] = {
      {Level::Excited, Level::Excited, p.zeta2, "Phi1Phi1"},
      {Level::Ground, Level::Excited, p.zeta1, "Phi0Phi1"},
      {Level::Excited, Level::Ground, p.zeta1, "Phi1Phi0"},
      {Level::Ground, Level::Ground, p.zeta0, "Phi0Phi0"},
  };
  for (const auto& pat : patterns) {
    for (int up_atom : {0, 1}) {
      terms.push_back(hopping(pat.zeta,
                              {Op::transition_op(TransitionId::hybridize(pat.up, pat.down, up_atom))},
                              std::string("tun.") + pat.name + ".up_on_atom" +
                                  std::to_string(up_atom + 1)));
    }
  }

  if (with_spin) {
    terms.push_back(diagonal(p.freq_spin, number(ModeId::spin(), at), "spin.field"));
    for (int atom : {0, 1}) {
      for (Level level : {Level::Excited, Level::Ground}) {
        const auto relax = TransitionId::spin_relax(atom, level);
        const std::string tag = "atom" + std::to_string(atom + 1) +
                                (level == Level::Excited ? ".level0" : ".level-1");
        terms.push_back(diagonal(p.freq_spin, excited_projector(relax, at), "spin.at." + tag));
        terms.push_back(hopping(p.g_spin, emission(relax, ModeId::spin(), at), "spin.int." + tag));
      }
    }
  }
  return terms;
}

std::vector<Term> covalent_bond_terms(const ModelParams& p) {
  p.validate();
  std::vector<Term> terms;
  const auto sigma_c =
      p.bond_broken_is_excited ? TransitionId::bond_form() : TransitionId::bond_form().adjoint();

  for (Spin s : {Spin::Up, Spin::Down}) {
    const double w = s == Spin::Up ? p.freq_mol_up : p.freq_mol_down;
    const double g = s == Spin::Up ? p.g_mol_up : p.g_mol_down;
    const auto relax = TransitionId::molecular_relax(s);
    terms.push_back(diagonal(w, number(ModeId::molecular(s)), "field." + spin_name(s)));
    terms.push_back(diagonal(w, excited_projector(relax), "mol." + spin_name(s)));
    terms.push_back(hopping(g, emission(relax, ModeId::molecular(s), Gate::BondFormed),
                            "int." + spin_name(s)));
  }
  terms.push_back(diagonal(p.freq_phonon, number(ModeId::phonon()), "phonon.field"));
  terms.push_back(diagonal(p.freq_phonon, excited_projector(sigma_c), "bond"));
  terms.push_back(hopping(p.g_phonon, emission(sigma_c, ModeId::phonon()), "phonon.int"));

  const auto together = TransitionId::nucleus_together();
  terms.push_back(diagonal(p.zeta, {Op::transition_op(together), Op::transition_op(together.adjoint())},
                           "nucleus.apart"));
  terms.push_back(diagonal(p.zeta, {Op::transition_op(together.adjoint()), Op::transition_op(together)},
                           "nucleus.together"));
  return terms;
}

namespace {

void append_cavity(std::vector<Term>& terms, const CavityParams& cavity, int cavity_index,
                   int first_atom, bool rwa) {
  const ModeId mode = ModeId::generic(cavity_index);
  const std::string tag = "cavity" + std::to_string(cavity_index);
  terms.push_back(diagonal(cavity.omega_c, number(mode), tag + ".field"));
  for (std::size_t i = 0; i < cavity.g.size(); ++i) {
    const auto relax = TransitionId::reference_relax(first_atom + static_cast<int>(i));
    const std::string atag = tag + ".atom" + std::to_string(first_atom + i);
    terms.push_back(diagonal(cavity.omega_a, excited_projector(relax), atag + ".energy"));
    terms.push_back(hopping(cavity.g[i], emission(relax, mode), atag + ".rwa"));
    if (!rwa) {
      // a^dagger sigma^dagger; its adjoint a sigma comes with the term.
      terms.push_back(hopping(cavity.g[i], {Op::transition_op(relax.adjoint()), Op::create(mode)},
                              atag + ".counter"));
    }
  }
}

}  // namespace

std::vector<Term> tcm_terms(const CavityParams& cavity, bool rwa) {
  std::vector<Term> terms;
  append_cavity(terms, cavity, 0, 0, rwa);
  return terms;
}

std::vector<Term> tchm_terms(const std::vector<CavityParams>& cavities, double hopping_strength,
                             bool rwa) {
  std::vector<Term> terms;
  int first_atom = 0;
  for (std::size_t j = 0; j < cavities.size(); ++j) {
    append_cavity(terms, cavities[j], static_cast<int>(j), first_atom, rwa);
    first_atom += static_cast<int>(cavities[j].g.size());
  }
  for (std::size_t j = 0; j + 1 < cavities.size(); ++j) {
    terms.push_back(hopping(hopping_strength,
                            {Op::annihilate(ModeId::generic(static_cast<int>(j))),
                             Op::create(ModeId::generic(static_cast<int>(j + 1)))},
                            "hop" + std::to_string(j) + "_" + std::to_string(j + 1)));
  }
  return terms;
}

SparseOperator assemble(const std::vector<Term>& terms, const Basis& basis) {
  SparseOperator h(basis.size());
  const Cutoffs& cutoffs = basis.cutoffs();
  for (const auto& term : terms) {
    if (term.coefficient == Complex(0.0)) continue;
    for (std::size_t col = 0; col < basis.size(); ++col) {
      auto image = apply_ops(basis[col], term.ops, cutoffs);
      if (!image) continue;
      auto row = basis.index_of(image->state);
      if (!row) {
        throw std::runtime_error("term " + term.label + " maps " + basis[col].render() + " to " +
                                 image->state.render() + ", which is not in the basis");
      }
      h.add(*row, col, term.coefficient * image->amplitude);
      if (term.add_adjoint) h.add(col, *row, std::conj(term.coefficient) * image->amplitude);
    }
  }
  return h.normalize();
}

SparseOperator build_assoc_dissoc(const ModelParams& params, const Basis& basis, bool with_spin) {
  return assemble(assoc_dissoc_terms(params, with_spin), basis);
}

SparseOperator build_covalent_bond(const ModelParams& params, const Basis& basis) {
  return assemble(covalent_bond_terms(params), basis);
}

SparseOperator build_tcm(int atoms, double omega_c, double omega_a, const std::vector<double>& g,
                         bool rwa, const Basis& basis) {
  if (atoms < 1 || static_cast<int>(g.size()) != atoms) {
    throw std::invalid_argument("build_tcm needs N >= 1 and one coupling per atom");
  }
  return assemble(tcm_terms(CavityParams{omega_c, omega_a, g}, rwa), basis);
}

SparseOperator build_tchm(const std::vector<CavityParams>& cavities, double hopping_strength,
                          bool rwa, const Basis& basis) {
  if (cavities.size() < 2) throw std::invalid_argument("build_tchm needs at least two cavities");
  return assemble(tchm_terms(cavities, hopping_strength, rwa), basis);
}

SparseOperator mode_operator(const Basis& basis, ModeId mode, bool creation) {
  SparseOperator a(basis.size());
  const int cutoff = basis.cutoffs().of(mode);
  for (std::size_t col = 0; col < basis.size(); ++col) {
    auto image = creation ? apply_create(basis[col], mode, cutoff)
                          : apply_annihilate(basis[col], mode);
    if (!image) continue;
    // Images outside the basis are truncated away.
    if (auto row = basis.index_of(image->state)) a.add(*row, col, image->amplitude);
  }
  return a.normalize();
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string dump_operator(const SparseOperator& op, std::uint64_t model_hash) {
  std::ostringstream out;
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(model_hash));
  out << "%%tchsim-operator dim=" << op.dim() << " hash=" << hash << '\n';
  char line[128];
  for (const auto& t : op.entries()) {
    std::snprintf(line, sizeof line, "%zu %zu %.17g %.17g\n", t.row, t.col, t.value.real(),
                  t.value.imag());
    out << line;
  }
  return out.str();
}

}  // namespace tchsim
