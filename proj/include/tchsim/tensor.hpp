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
#include <string>
#include <vector>

#include "tchsim/operators.hpp"

// Dense tensor-product construction of the model Hamiltonians, independent of
// the basis generator and the sparse builders. Each term is a Kronecker
// product of small local matrices with identities on the remaining slots.
// Slot order: photon modes, then electron/atom bits, then the bond and nucleus
// bits; the full-space index is big-endian in that order.
namespace tchsim {

struct LocalFactor {
  std::size_t slot;
  DenseMatrix matrix;
};

struct ProductTerm {
  Complex coefficient;
  std::vector<LocalFactor> factors;
};

class TensorModel {
 public:
  static constexpr std::size_t kMaxDim = std::size_t{1} << 16;
  static constexpr std::size_t kMaxDenseDim = std::size_t{1} << 12;

  TensorModel(Variant variant, std::vector<std::size_t> slot_dims);

  Variant variant() const { return variant_; }
  const std::vector<std::size_t>& slot_dims() const { return dims_; }
  std::size_t dim() const { return dim_; }
  const std::vector<ProductTerm>& terms() const { return terms_; }

  void add(Complex coefficient, std::vector<LocalFactor> factors);
  /// Adds the term and its Hermitian conjugate.
  void add_with_adjoint(Complex coefficient, std::vector<LocalFactor> factors);

  std::vector<std::size_t> digits(std::size_t index) const;
  Complex entry(std::size_t row, std::size_t col) const;

  /// Explicit Kronecker products; limited to kMaxDenseDim.
  DenseMatrix to_dense() const;
  /// Entries at the given full-space indices.
  DenseMatrix restrict_to(const std::vector<std::size_t>& indices) const;

 private:
  Variant variant_;
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::size_t dim_ = 1;
  std::vector<ProductTerm> terms_;
};

/// Full-space index of a basis state under the model's slot layout.
std::size_t product_index(const TensorModel& model, const BasisState& state);
std::vector<std::size_t> product_indices(const TensorModel& model, const Basis& basis);

/// Single cavity with N two-level atoms, photon cutoff `cutoff`.
TensorModel tensor_tcm(const CavityParams& cavity, bool rwa, int cutoff);
TensorModel tensor_tchm(const std::vector<CavityParams>& cavities, double hopping, bool rwa,
                        int cutoff);
/// Photon slots sized by the per-mode cutoffs (capped by the dimension limit).
TensorModel tensor_assoc_dissoc(const ModelParams& params, bool with_spin, const Cutoffs& cutoffs);
TensorModel tensor_covalent_bond(const ModelParams& params, const Cutoffs& cutoffs);

}  // namespace tchsim
