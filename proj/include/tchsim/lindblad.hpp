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
#include <stdexcept>
#include <string>
#include <vector>

#include "tchsim/kernels.hpp"
#include "tchsim/operators.hpp"

namespace tchsim {

using DensityMatrix = DenseMatrix;

/// One photon mode coupled to the environment: leakage through the
/// annihilation-type jump A at rate gamma_out, thermal pumping through A^dagger
/// at rate gamma_in. mu = gamma_in / gamma_out must stay below 1.
struct DissipationChannel {
  SparseOperator jump;
  double gamma_out = 0.0;
  double gamma_in = 0.0;
  std::string label;

  double mu() const { return gamma_out > 0.0 ? gamma_in / gamma_out : 0.0; }
  void validate() const;
};

class TraceDriftError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-step trace drift above this aborts the evolution.
inline constexpr double kMaxStepDrift = 1e-3;

/// gamma_out (A rho A^dagger - {rho, A^dagger A} / 2).
DenseMatrix dissipator(const DissipationChannel& channel, const DenseMatrix& rho);
/// gamma_in (A^dagger rho A - {rho, A A^dagger} / 2). A A^dagger is the product
/// of the truncated matrices, so the increment is trace-free at the cutoff too.
DenseMatrix influx(const DissipationChannel& channel, const DenseMatrix& rho);

/// exp(-i H dt) from one eigendecomposition of a dense Hermitian H.
class ExactUnitary {
 public:
  ExactUnitary(const SparseOperator& h, double dt);
  const DenseMatrix& matrix() const { return u_; }
  DenseMatrix apply(const DenseMatrix& rho) const;

 private:
  DenseMatrix u_;
};

DenseMatrix unitary_step(const SparseOperator& h, const DenseMatrix& rho, double dt);

struct StepReport {
  double trace_drift = 0.0;            // |tr - 1| before renormalization
  double hermiticity_deviation = 0.0;  // max |rho - rho^dagger| before symmetrization
};

/// Dense reference step: exact unitary, then the first-order Kraus map
/// M rho M + dt sum gamma J rho J^dagger with M = sqrt(1 - dt sum gamma J^dagger J),
/// then symmetrization and trace renormalization. Throws TraceDriftError.
StepReport step(const ExactUnitary& unitary, const std::vector<DissipationChannel>& channels,
                DenseMatrix& rho, double dt);
DenseMatrix step(const SparseOperator& h, const std::vector<DissipationChannel>& channels,
                 const DenseMatrix& rho, double dt);

/// The same step on a block-sparse density matrix. H splits into connected
/// blocks, each with its own cached exponential; rho is stored only on the
/// block pairs reachable from rho0 under the jumps. Jumps must be monomial
/// (at most one real entry per row and column), which holds for ladder
/// operators over a Fock basis.
class Propagator {
 public:
  Propagator(const SparseOperator& h, std::vector<DissipationChannel> channels, double dt,
             const DenseMatrix& rho0, const kernels::Table& kernels = kernels::active());

  StepReport step();

  std::size_t dim() const { return dim_; }
  std::size_t block_count() const { return blocks_.size(); }
  std::size_t pair_count() const { return pairs_.size(); }
  std::size_t stored_entries() const { return rho_.size(); }

  DenseMatrix density() const;
  /// tr(op rho).
  Complex expectation(const SparseOperator& op) const;
  double trace() const;
  double min_eigenvalue() const;

 private:
  struct Block {
    std::vector<std::size_t> members;
    DenseMatrix u;
    DenseMatrix u_adj;
    std::vector<double> decay;  // sqrt(1 - dt D) per member
  };
  struct Pair {
    std::size_t row_block;
    std::size_t col_block;
    std::size_t offset;  // into the complex buffers
    std::size_t mirror;
  };
  // Rows of one block that a jump sends into one target block.
  struct Group {
    std::size_t target;
    std::vector<std::uint32_t> src;
    std::vector<std::uint32_t> dst;
    std::vector<double> w;
  };
  struct Transfer {
    std::size_t src_pair;
    std::size_t dst_pair;
    const Group* rows;
    const Group* cols;
    double rate;
  };

  std::size_t pair_index(std::size_t row_block, std::size_t col_block) const;
  double* data(std::vector<Complex>& buf, const Pair& p) {
    return reinterpret_cast<double*>(buf.data() + p.offset);
  }

  std::size_t dim_ = 0;
  double dt_ = 0.0;
  const kernels::Table* kernels_;
  std::vector<DissipationChannel> channels_;
  std::vector<Block> blocks_;
  std::vector<std::size_t> block_of_;
  std::vector<std::size_t> local_of_;
  std::vector<Pair> pairs_;
  std::vector<std::size_t> pair_lookup_;  // row_block * blocks + col_block, npos if absent
  std::vector<std::vector<std::vector<Group>>> groups_;  // [jump][block]
  std::vector<Transfer> transfers_;
  std::vector<std::vector<std::size_t>> components_;
  bool has_unsupported_ = false;
  std::vector<Complex> rho_;
  std::vector<Complex> next_;
  DenseMatrix scratch_;
};

struct Observable {
  std::string label;
  SparseOperator op;
};

struct EvolveOptions {
  std::size_t steps = 20000;
  double dt = 10.0;
  std::size_t stride = 20;
  bool track_min_eig = true;
};

struct Sample {
  std::size_t step = 0;
  double time = 0.0;
  std::vector<double> values;
  double trace_drift = 0.0;  // cumulative |drift| up to this step
  double min_eig = 0.0;
};

struct TimeSeries {
  std::vector<std::string> labels;
  std::vector<Sample> samples;
  double max_step_drift = 0.0;
  double cumulative_drift = 0.0;
  double max_hermiticity_deviation = 0.0;
  double min_eig = 0.0;  // over recorded samples
  DenseMatrix final_state;
};

/// Runs `steps` steps with the block propagator, recording tr(P rho) for each
/// observable at step 0, every `stride` steps and at the last step.
TimeSeries evolve(const SparseOperator& h, const std::vector<DissipationChannel>& channels,
                  const DenseMatrix& rho0, const std::vector<Observable>& observables,
                  const EvolveOptions& options);

/// CSV text: `step,time,<labels>,trace_drift,min_eig`, 12 significant digits.
std::string to_csv(const TimeSeries& series);

/// %.12g with negative zero printed as 0.
std::string format_number(double value);

}  // namespace tchsim
