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
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "tchsim/generator.hpp"
#include "tchsim/terms.hpp"

namespace tchsim {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;

struct Triplet {
  std::size_t row;
  std::size_t col;
  Complex value;
};

/// Complex matrix in coordinate form. normalize() sorts entries, sums
/// duplicates and drops exact zeros.
class SparseOperator {
 public:
  SparseOperator() = default;
  explicit SparseOperator(std::size_t dim) : dim_(dim) {}
  SparseOperator(std::size_t dim, std::vector<Triplet> entries);

  std::size_t dim() const { return dim_; }
  const std::vector<Triplet>& entries() const { return entries_; }

  void add(std::size_t row, std::size_t col, Complex value);
  SparseOperator& normalize();

  /// Value at (row, col); requires a normalized operator.
  Complex entry(std::size_t row, std::size_t col) const;

  /// max |A(r,c) - conj(A(c,r))|.
  double hermiticity_deviation() const;

  DenseMatrix to_dense() const;
  Eigen::SparseMatrix<Complex> to_eigen() const;

  SparseOperator adjoint() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Triplet> entries_;
  bool normalized_ = true;
};

/// Frequencies (hbar = 1, energy units of Omega up), couplings and tunnelling
/// intensities of the hydrogen models.
struct ModelParams {
  double freq_mol_up = 0.5;     // omega up
  double freq_mol_down = 0.5;   // omega down
  double freq_at_up = 1.0;      // Omega up
  double freq_at_down = 1.0;    // Omega down
  double freq_spin = 0.1;       // Omega s
  double freq_phonon = 0.01;    // Omega c

  double g_mol_up = 0.005;
  double g_mol_down = 0.005;
  double g_at_up = 0.01;
  double g_at_down = 0.01;
  double g_spin = 0.001;
  double g_phonon = 0.0005;

  double zeta = 0.005;   // nucleus term of the covalent-bond model
  double zeta0 = 0.0;    // both electrons on Phi0
  double zeta1 = 0.01;   // one electron on Phi1
  double zeta2 = 0.1;    // both electrons on Phi1

  // Which covalent-bond member carries the Omega c energy and emits the
  // phonon on relaxation: true means cb=1 (broken) is the excited member.
  bool bond_broken_is_excited = true;

  void validate() const;
  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Term lists. The same lists drive basis closure and matrix assembly.
std::vector<Term> assoc_dissoc_terms(const ModelParams& params, bool with_spin);
std::vector<Term> covalent_bond_terms(const ModelParams& params);

struct CavityParams {
  double omega_c = 1.0;
  double omega_a = 1.0;
  std::vector<double> g;  // one coupling per atom in the cavity
};

/// Single cavity with N = g.size() atoms; rwa drops a^dagger sigma^dagger and a sigma.
std::vector<Term> tcm_terms(const CavityParams& cavity, bool rwa);
/// Chain of cavities j = 0..M-1 with nearest-neighbour photon hopping.
std::vector<Term> tchm_terms(const std::vector<CavityParams>& cavities, double hopping, bool rwa);

/// Sums every term over the basis. Throws std::runtime_error naming the state
/// if a term maps a basis state outside the basis.
SparseOperator assemble(const std::vector<Term>& terms, const Basis& basis);

SparseOperator build_assoc_dissoc(const ModelParams& params, const Basis& basis, bool with_spin);
SparseOperator build_covalent_bond(const ModelParams& params, const Basis& basis);
SparseOperator build_tcm(int atoms, double omega_c, double omega_a, const std::vector<double>& g,
                         bool rwa, const Basis& basis);
SparseOperator build_tchm(const std::vector<CavityParams>& cavities, double hopping, bool rwa,
                          const Basis& basis);

/// Ladder operator a (or a^dagger) of one mode restricted to the basis.
SparseOperator mode_operator(const Basis& basis, ModeId mode, bool creation = false);

/// Diagonal projector onto the basis states satisfying `pred`.
template <typename Pred>
SparseOperator projector(const Basis& basis, Pred pred) {
  SparseOperator p(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (pred(basis[i])) p.add(i, i, 1.0);
  }
  return p.normalize();
}

/// Text dump: header `%%tchsim-operator dim=<n> hash=<16 hex>` followed by
/// `row col re im` lines in normalized order.
std::string dump_operator(const SparseOperator& op, std::uint64_t model_hash);

/// FNV-1a 64-bit hash of a byte string; used for model and config hashes.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace tchsim
