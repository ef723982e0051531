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


#include "tchsim/tensor.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace tchsim {

namespace {

DenseMatrix ket_bra(std::size_t dim, std::size_t row, std::size_t col) {
  DenseMatrix m = DenseMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
  return m;
}

// Two-level locals, basis {|0>, |1>}.
DenseMatrix lower() { return ket_bra(2, 0, 1); }
DenseMatrix raise() { return ket_bra(2, 1, 0); }
DenseMatrix occupied() { return ket_bra(2, 1, 1); }
DenseMatrix empty() { return ket_bra(2, 0, 0); }

DenseMatrix ladder(std::size_t dim) {
  DenseMatrix a = DenseMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t p = 1; p < dim; ++p) {
    a(static_cast<Eigen::Index>(p - 1), static_cast<Eigen::Index>(p)) = std::sqrt(static_cast<double>(p));
  }
  return a;
}

DenseMatrix number_op(std::size_t dim) {
  DenseMatrix a = ladder(dim);
  return a.adjoint() * a;
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

std::size_t photon_dim(const Cutoffs& cutoffs, ModeId mode) {
  const int c = cutoffs.of(mode);
  if (c < 0 || c >= Cutoffs::kUnbounded) {
    throw std::invalid_argument("tensor oracle needs a finite cutoff for " + mode.name());
  }
  return static_cast<std::size_t>(c) + 1;
}

}  // namespace

TensorModel::TensorModel(Variant variant, std::vector<std::size_t> slot_dims)
    : variant_(variant), dims_(std::move(slot_dims)) {
  if (dims_.size() > 64) throw std::invalid_argument("tensor oracle supports at most 64 slots");
  strides_.assign(dims_.size(), 1);
  for (std::size_t s = dims_.size(); s-- > 0;) {
    if (dims_[s] == 0) throw std::invalid_argument("slot dimension must be positive");
    strides_[s] = dim_;
    dim_ *= dims_[s];
    if (dim_ > kMaxDim) {
      throw std::invalid_argument("tensor-product dimension exceeds " + std::to_string(kMaxDim));
    }
  }
}

void TensorModel::add(Complex coefficient, std::vector<LocalFactor> factors) {
  std::uint64_t seen = 0;
  for (const auto& f : factors) {
    if (f.slot >= dims_.size()) throw std::invalid_argument("factor slot out of range");
    const auto d = static_cast<Eigen::Index>(dims_[f.slot]);
    if (f.matrix.rows() != d || f.matrix.cols() != d) {
      throw std::invalid_argument("factor size does not match slot " + std::to_string(f.slot));
    }
    if (seen & (std::uint64_t{1} << f.slot)) throw std::invalid_argument("repeated factor slot");
    seen |= std::uint64_t{1} << f.slot;
  }
  terms_.push_back(ProductTerm{coefficient, std::move(factors)});
}

void TensorModel::add_with_adjoint(Complex coefficient, std::vector<LocalFactor> factors) {
  std::vector<LocalFactor> adj;
  for (const auto& f : factors) adj.push_back({f.slot, f.matrix.adjoint()});
  add(coefficient, std::move(factors));
  add(std::conj(coefficient), std::move(adj));
}

std::vector<std::size_t> TensorModel::digits(std::size_t index) const {
  if (index >= dim_) throw std::out_of_range("tensor index out of range");
  std::vector<std::size_t> d(dims_.size());
  for (std::size_t s = 0; s < dims_.size(); ++s) {
    d[s] = (index / strides_[s]) % dims_[s];
  }
  return d;
}

Complex TensorModel::entry(std::size_t row, std::size_t col) const {
  const auto r = digits(row);
  const auto c = digits(col);
  std::uint64_t differ = 0;
  for (std::size_t s = 0; s < dims_.size(); ++s) {
    if (r[s] != c[s]) differ |= std::uint64_t{1} << s;
  }
  Complex sum = 0.0;
  for (const auto& t : terms_) {
    std::uint64_t covered = 0;
    for (const auto& f : t.factors) covered |= std::uint64_t{1} << f.slot;
    if (differ & ~covered) continue;  // identity slot with different digits
    Complex v = t.coefficient;
    for (const auto& f : t.factors) {
      v *= f.matrix(static_cast<Eigen::Index>(r[f.slot]), static_cast<Eigen::Index>(c[f.slot]));
      if (v == Complex(0.0)) break;
    }
    sum += v;
  }
  return sum;
}

DenseMatrix TensorModel::to_dense() const {
  if (dim_ > kMaxDenseDim) {
    throw std::invalid_argument("dense tensor product limited to " + std::to_string(kMaxDenseDim));
  }
  const auto n = static_cast<Eigen::Index>(dim_);
  DenseMatrix out = DenseMatrix::Zero(n, n);
  for (const auto& t : terms_) {
    DenseMatrix m = DenseMatrix::Identity(1, 1);
    for (std::size_t s = 0; s < dims_.size(); ++s) {
      const auto d = static_cast<Eigen::Index>(dims_[s]);
      DenseMatrix local = DenseMatrix::Identity(d, d);
      for (const auto& f : t.factors) {
        if (f.slot == s) local = f.matrix;
      }
      m = kron(m, local);
    }
    out += t.coefficient * m;
  }
  return out;
}

DenseMatrix TensorModel::restrict_to(const std::vector<std::size_t>& indices) const {
  const auto n = static_cast<Eigen::Index>(indices.size());
  DenseMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(i, j) = entry(indices[static_cast<std::size_t>(i)], indices[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

std::size_t product_index(const TensorModel& model, const BasisState& state) {
  if (state.variant() != model.variant()) {
    throw std::invalid_argument("state variant does not match the tensor model");
  }
  const auto& dims = model.slot_dims();
  std::vector<std::size_t> d;
  for (int p = 0; p < state.photon_count(); ++p) d.push_back(static_cast<std::size_t>(state.occupation(p)));
  switch (state.variant()) {
    case Variant::Reference:
      for (std::size_t b = d.size(); b < dims.size(); ++b) d.push_back(state.bit(static_cast<int>(b - state.photon_count())));
      break;
    case Variant::AssocDissoc:
      for (int b = 0; b < orbital::kAtomicSlots; ++b) d.push_back(state.bit(b));
      d.push_back(state.nuclei_apart());
      break;
    case Variant::CovalentBond:
      d.push_back(state.bit(orbital::covalent_bit(Spin::Up)));
      d.push_back(state.bit(orbital::covalent_bit(Spin::Down)));
      d.push_back(state.bond_broken());
      d.push_back(state.nuclei_apart());
      break;
  }
  if (d.size() != dims.size()) throw std::invalid_argument("state does not fit the tensor layout");
  std::size_t index = 0;
  for (std::size_t s = 0; s < dims.size(); ++s) {
    if (d[s] >= dims[s]) {
      throw std::invalid_argument("state " + state.render() + " exceeds slot " + std::to_string(s));
    }
    index = index * dims[s] + d[s];
  }
  return index;
}

std::vector<std::size_t> product_indices(const TensorModel& model, const Basis& basis) {
  std::vector<std::size_t> out;
  out.reserve(basis.size());
  for (const auto& s : basis) out.push_back(product_index(model, s));
  return out;
}

namespace {

void add_cavity(TensorModel& m, const CavityParams& cav, std::size_t photon_slot,
                std::size_t first_atom_slot, bool rwa) {
  const std::size_t pd = m.slot_dims()[photon_slot];
  const DenseMatrix a = ladder(pd);
  const DenseMatrix ad = a.adjoint();
  m.add(cav.omega_c, {{photon_slot, number_op(pd)}});
  for (std::size_t i = 0; i < cav.g.size(); ++i) {
    const std::size_t s = first_atom_slot + i;
    m.add(cav.omega_a, {{s, occupied()}});
    m.add_with_adjoint(cav.g[i], {{photon_slot, ad}, {s, lower()}});
    if (!rwa) m.add_with_adjoint(cav.g[i], {{photon_slot, ad}, {s, raise()}});
  }
}

}  // namespace

TensorModel tensor_tcm(const CavityParams& cavity, bool rwa, int cutoff) {
  return tensor_tchm({cavity}, 0.0, rwa, cutoff);
}

TensorModel tensor_tchm(const std::vector<CavityParams>& cavities, double hopping, bool rwa,
                        int cutoff) {
  if (cavities.empty()) throw std::invalid_argument("at least one cavity");
  if (cutoff < 0) throw std::invalid_argument("cutoff must be non-negative");
  std::vector<std::size_t> dims(cavities.size(), static_cast<std::size_t>(cutoff) + 1);
  for (const auto& c : cavities) dims.insert(dims.end(), c.g.size(), 2);
  TensorModel m(Variant::Reference, dims);
  std::size_t atom_slot = cavities.size();
  for (std::size_t j = 0; j < cavities.size(); ++j) {
    add_cavity(m, cavities[j], j, atom_slot, rwa);
    atom_slot += cavities[j].g.size();
  }
  const DenseMatrix a = ladder(static_cast<std::size_t>(cutoff) + 1);
  for (std::size_t j = 0; j + 1 < cavities.size(); ++j) {
    m.add_with_adjoint(hopping, {{j + 1, a.adjoint()}, {j, a}});
  }
  return m;
}

TensorModel tensor_assoc_dissoc(const ModelParams& p, bool with_spin, const Cutoffs& cutoffs) {
  p.validate();
  const ModeId modes[] = {ModeId::molecular(Spin::Up), ModeId::molecular(Spin::Down),
                          ModeId::atomic(Spin::Up), ModeId::atomic(Spin::Down), ModeId::spin()};
  std::vector<std::size_t> dims;
  for (ModeId mode : modes) dims.push_back(photon_dim(cutoffs, mode));
  dims.insert(dims.end(), 8, 2);
  dims.push_back(2);
  TensorModel m(Variant::AssocDissoc, dims);

  constexpr std::size_t kNucleus = 13;
  auto e = [](int bit) { return static_cast<std::size_t>(5 + bit); };
  auto ph = [](int slot) { return static_cast<std::size_t>(slot); };
  const DenseMatrix together = empty();
  const DenseMatrix apart = occupied();

  // Molecular bits reuse the first four electron slots:
  // Phi1 up, Phi1 down, Phi0 up, Phi0 down.
  for (int s = 0; s < 2; ++s) {
    const double w = s == 0 ? p.freq_mol_up : p.freq_mol_down;
    const double g = s == 0 ? p.g_mol_up : p.g_mol_down;
    const int exc = s, gnd = 2 + s;
    const DenseMatrix a = ladder(dims[ph(s)]);
    m.add(w, {{ph(s), number_op(dims[ph(s)])}, {kNucleus, together}});
    m.add(w, {{e(exc), occupied()}, {e(gnd), empty()}, {kNucleus, together}});
    m.add_with_adjoint(g, {{ph(s), a.adjoint()}, {e(exc), lower()}, {e(gnd), raise()},
                           {kNucleus, together}});
  }

  // Atomic bits: atom * 4 + (ground ? 2 : 0) + (down ? 1 : 0).
  for (int s = 0; s < 2; ++s) {
    const double w = s == 0 ? p.freq_at_up : p.freq_at_down;
    const double g = s == 0 ? p.g_at_up : p.g_at_down;
    const DenseMatrix a = ladder(dims[ph(2 + s)]);
    m.add(w, {{ph(2 + s), number_op(dims[ph(2 + s)])}, {kNucleus, apart}});
    for (int atom = 0; atom < 2; ++atom) {
      const int exc = atom * 4 + s, gnd = atom * 4 + 2 + s;
      m.add(w, {{e(exc), occupied()}, {e(gnd), empty()}, {kNucleus, apart}});
      m.add_with_adjoint(g, {{ph(2 + s), a.adjoint()}, {e(exc), lower()}, {e(gnd), raise()},
                             {kNucleus, apart}});
    }
  }

  // Tunnelling between a molecular pair and the excited atomic pair with the
  // same spins, either placement.
  struct Pattern {
    int up_bit;
    int down_bit;
    double zeta;
  };
  const Pattern patterns[] = {{0, 1, p.zeta2}, {2, 1, p.zeta1}, {0, 3, p.zeta1}, {2, 3, p.zeta0}};
  for (const auto& pat : patterns) {
    for (int up_atom = 0; up_atom < 2; ++up_atom) {
      const int img_up = up_atom * 4;
      const int img_down = (1 - up_atom) * 4 + 1;
      std::vector<LocalFactor> f;
      for (int b = 0; b < 8; ++b) {
        const std::size_t to = (b == img_up || b == img_down) ? 1 : 0;
        const std::size_t from = (b == pat.up_bit || b == pat.down_bit) ? 1 : 0;
        f.push_back({e(b), ket_bra(2, to, from)});
      }
      f.push_back({kNucleus, ket_bra(2, 1, 0)});
      m.add_with_adjoint(pat.zeta, std::move(f));
    }
  }

  if (with_spin) {
    const DenseMatrix a = ladder(dims[ph(4)]);
    m.add(p.freq_spin, {{ph(4), number_op(dims[ph(4)])}, {kNucleus, apart}});
    for (int atom = 0; atom < 2; ++atom) {
      for (int level = 0; level < 2; ++level) {
        const int up = atom * 4 + 2 * level, down = up + 1;
        m.add(p.freq_spin, {{e(up), occupied()}, {e(down), empty()}, {kNucleus, apart}});
        m.add_with_adjoint(p.g_spin, {{ph(4), a.adjoint()}, {e(up), lower()}, {e(down), raise()},
                                      {kNucleus, apart}});
      }
    }
  }
  return m;
}

TensorModel tensor_covalent_bond(const ModelParams& p, const Cutoffs& cutoffs) {
  p.validate();
  std::vector<std::size_t> dims{photon_dim(cutoffs, ModeId::molecular(Spin::Up)),
                                photon_dim(cutoffs, ModeId::molecular(Spin::Down)),
                                photon_dim(cutoffs, ModeId::phonon()), 2, 2, 2, 2};
  TensorModel m(Variant::CovalentBond, dims);
  constexpr std::size_t kBond = 5, kNucleus = 6;
  const DenseMatrix formed = empty();
  for (std::size_t s = 0; s < 2; ++s) {
    const double w = s == 0 ? p.freq_mol_up : p.freq_mol_down;
    const double g = s == 0 ? p.g_mol_up : p.g_mol_down;
    const DenseMatrix a = ladder(dims[s]);
    m.add(w, {{s, number_op(dims[s])}});
    m.add(w, {{3 + s, occupied()}});
    m.add_with_adjoint(g, {{s, a.adjoint()}, {3 + s, lower()}, {kBond, formed}});
  }
  const DenseMatrix b = ladder(dims[2]);
  m.add(p.freq_phonon, {{2, number_op(dims[2])}});
  m.add(p.freq_phonon, {{kBond, p.bond_broken_is_excited ? occupied() : empty()}});
  m.add_with_adjoint(p.g_phonon, {{2, b.adjoint()}, {kBond, p.bond_broken_is_excited ? lower() : raise()}});
  m.add(p.zeta, {{kNucleus, raise() * lower()}});
  m.add(p.zeta, {{kNucleus, lower() * raise()}});
  return m;
}

}  // namespace tchsim
