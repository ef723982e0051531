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


#include "tchsim/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <set>

#include <Eigen/Eigenvalues>

namespace tchsim {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void require_dim(const SparseOperator& a, const DenseMatrix& rho, const char* what) {
  if (rho.rows() != rho.cols() || static_cast<std::size_t>(rho.rows()) != a.dim()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (operator " +
                                std::to_string(a.dim()) + ", rho " + std::to_string(rho.rows()) +
                                "x" + std::to_string(rho.cols()) + ")");
  }
}

DenseMatrix lindblad_term(const Eigen::SparseMatrix<Complex>& a, const DenseMatrix& rho,
                          double rate) {
  const Eigen::SparseMatrix<Complex> a_adj = a.adjoint();
  const Eigen::SparseMatrix<Complex> n = a_adj * a;
  DenseMatrix out = a * rho * a_adj;
  out -= 0.5 * (rho * n + n * rho);
  return rate * out;
}

double renormalize(DenseMatrix& rho, std::size_t step_hint) {
  const double tr = rho.trace().real();
  const double drift = std::abs(tr - 1.0);
  if (!(drift <= kMaxStepDrift)) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "trace drift %.3g exceeds %.0e%s; reduce dt", drift, kMaxStepDrift,
                  step_hint == kNone ? "" : " in one step");
    throw TraceDriftError(buf);
  }
  rho /= tr;
  return drift;
}

}  // namespace

void DissipationChannel::validate() const {
  if (!(gamma_out >= 0.0) || !(gamma_in >= 0.0)) {
    throw std::invalid_argument("channel " + label + ": rates must be non-negative");
  }
  if (gamma_in > 0.0 && !(gamma_in < gamma_out)) {
    throw std::invalid_argument("channel " + label +
                                ": influx needs mu = gamma_in / gamma_out < 1");
  }
}

DenseMatrix dissipator(const DissipationChannel& channel, const DenseMatrix& rho) {
  require_dim(channel.jump, rho, "dissipator");
  return lindblad_term(channel.jump.to_eigen(), rho, channel.gamma_out);
}

DenseMatrix influx(const DissipationChannel& channel, const DenseMatrix& rho) {
  require_dim(channel.jump, rho, "influx");
  const Eigen::SparseMatrix<Complex> a_adj = channel.jump.to_eigen().adjoint();
  return lindblad_term(a_adj, rho, channel.gamma_in);
}

ExactUnitary::ExactUnitary(const SparseOperator& h, double dt) {
  if (h.hermiticity_deviation() > 1e-12) {
    throw std::invalid_argument("unitary step needs a Hermitian H");
  }
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h.to_dense());
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition of H failed");
  const Eigen::VectorXcd phase =
      (es.eigenvalues().cast<Complex>() * Complex(0.0, -dt)).array().exp();
  u_ = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

DenseMatrix ExactUnitary::apply(const DenseMatrix& rho) const {
  if (rho.rows() != u_.rows() || rho.cols() != u_.cols()) {
    throw std::invalid_argument("unitary step: dimension mismatch");
  }
  return u_ * rho * u_.adjoint();
}

DenseMatrix unitary_step(const SparseOperator& h, const DenseMatrix& rho, double dt) {
  require_dim(h, rho, "unitary_step");
  return ExactUnitary(h, dt).apply(rho);
}

StepReport step(const ExactUnitary& unitary, const std::vector<DissipationChannel>& channels,
                DenseMatrix& rho, double dt) {
  const DenseMatrix u_rho = unitary.apply(rho);
  const auto n = u_rho.rows();
  // Kraus form: M rho M + dt sum gamma J rho J^dagger with M = sqrt(1 - dt K),
  // K = sum gamma J^dagger J. Agrees with an Euler step of the dissipators to
  // first order and keeps rho positive.
  DenseMatrix k = DenseMatrix::Zero(n, n);
  DenseMatrix jumps = DenseMatrix::Zero(n, n);
  for (const auto& ch : channels) {
    require_dim(ch.jump, rho, "step");
    const Eigen::SparseMatrix<Complex> a = ch.jump.to_eigen();
    const Eigen::SparseMatrix<Complex> a_adj = a.adjoint();
    if (ch.gamma_out > 0.0) {
      k += ch.gamma_out * DenseMatrix(a_adj * a);
      jumps += ch.gamma_out * (a * u_rho * a_adj);
    }
    if (ch.gamma_in > 0.0) {
      k += ch.gamma_in * DenseMatrix(a * a_adj);
      jumps += ch.gamma_in * (a_adj * u_rho * a);
    }
  }
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(DenseMatrix::Identity(n, n) - dt * k);
  if (es.eigenvalues().minCoeff() < 0.0) {
    throw std::invalid_argument("dt too large for the channel rates (dt * rate > 1)");
  }
  const DenseMatrix m = es.eigenvectors() * es.eigenvalues().cwiseSqrt().cast<Complex>().asDiagonal() *
                        es.eigenvectors().adjoint();
  DenseMatrix next = m * u_rho * m + dt * jumps;
  StepReport report;
  report.hermiticity_deviation = (next - next.adjoint()).cwiseAbs().maxCoeff();
  rho = 0.5 * (next + next.adjoint());
  report.trace_drift = renormalize(rho, 0);
  return report;
}

DenseMatrix step(const SparseOperator& h, const std::vector<DissipationChannel>& channels,
                 const DenseMatrix& rho, double dt) {
  require_dim(h, rho, "step");
  for (const auto& ch : channels) ch.validate();
  DenseMatrix out = rho;
  step(ExactUnitary(h, dt), channels, out, dt);
  return out;
}

// ---------------------------------------------------------------------------
// Block propagator

Propagator::Propagator(const SparseOperator& h, std::vector<DissipationChannel> channels,
                       double dt, const DenseMatrix& rho0, const kernels::Table& kernels)
    : dim_(h.dim()), dt_(dt), kernels_(&kernels), channels_(std::move(channels)) {
  require_dim(h, rho0, "propagator");
  if (h.hermiticity_deviation() > 1e-12) {
    throw std::invalid_argument("unitary step needs a Hermitian H");
  }
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");

  // Connected components of H.
  std::vector<std::size_t> parent(dim_);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& t : h.entries()) {
    if (t.row != t.col && t.value != Complex(0.0)) {
      const std::size_t a = find(t.row), b = find(t.col);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  block_of_.assign(dim_, kNone);
  local_of_.assign(dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i) {
    const std::size_t root = find(i);
    if (block_of_[root] == kNone) {
      block_of_[root] = blocks_.size();
      blocks_.emplace_back();
    }
    const std::size_t b = block_of_[root];
    block_of_[i] = b;
    local_of_[i] = blocks_[b].members.size();
    blocks_[b].members.push_back(i);
  }
  const std::size_t nb = blocks_.size();

  // Per-block exponentials.
  std::vector<std::vector<Triplet>> local_entries(nb);
  for (const auto& t : h.entries()) {
    local_entries[block_of_[t.row]].push_back({local_of_[t.row], local_of_[t.col], t.value});
  }
  for (std::size_t b = 0; b < nb; ++b) {
    Block& blk = blocks_[b];
    const auto n = static_cast<Eigen::Index>(blk.members.size());
    DenseMatrix hb = DenseMatrix::Zero(n, n);
    for (const auto& t : local_entries[b]) hb(t.row, t.col) += t.value;
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(hb);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition of H failed");
    const Eigen::VectorXcd phase =
        (es.eigenvalues().cast<Complex>() * Complex(0.0, -dt)).array().exp();
    blk.u = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
    blk.u_adj = blk.u.adjoint();
    blk.decay.assign(blk.members.size(), 0.0);
  }

  // Monomial jump maps, one per active direction.
  struct Map {
    std::vector<std::size_t> target;
    std::vector<double> weight;
    double rate;
  };
  std::vector<Map> maps;
  for (const auto& ch : channels_) {
    ch.validate();
    if (ch.jump.dim() != dim_) throw std::invalid_argument("channel " + ch.label + ": dimension mismatch");
    Map fwd{std::vector<std::size_t>(dim_, kNone), std::vector<double>(dim_, 0.0), ch.gamma_out};
    Map bwd{std::vector<std::size_t>(dim_, kNone), std::vector<double>(dim_, 0.0), ch.gamma_in};
    for (const auto& t : ch.jump.entries()) {
      if (t.value.imag() != 0.0) {
        throw std::invalid_argument("channel " + ch.label + ": block propagator needs a real jump");
      }
      if (fwd.target[t.col] != kNone || bwd.target[t.row] != kNone) {
        throw std::invalid_argument("channel " + ch.label + ": jump is not monomial");
      }
      fwd.target[t.col] = t.row;
      fwd.weight[t.col] = t.value.real();
      bwd.target[t.row] = t.col;
      bwd.weight[t.row] = t.value.real();
    }
    for (std::size_t i = 0; i < dim_; ++i) {
      // A^dagger A and A A^dagger are diagonal for a monomial A.
      blocks_[block_of_[i]].decay[local_of_[i]] +=
          ch.gamma_out * fwd.weight[i] * fwd.weight[i] + ch.gamma_in * bwd.weight[i] * bwd.weight[i];
    }
    if (ch.gamma_out > 0.0) maps.push_back(std::move(fwd));
    if (ch.gamma_in > 0.0) maps.push_back(std::move(bwd));
  }
  // Rates become the no-jump Kraus factors sqrt(1 - dt D).
  for (auto& blk : blocks_) {
    for (double& d : blk.decay) {
      if (d * dt_ > 1.0) throw std::invalid_argument("dt too large for the channel rates (dt * rate > 1)");
      d = std::sqrt(1.0 - d * dt_);
    }
  }

  groups_.assign(maps.size(), std::vector<std::vector<Group>>(nb));
  for (std::size_t m = 0; m < maps.size(); ++m) {
    for (std::size_t b = 0; b < nb; ++b) {
      auto& gs = groups_[m][b];
      for (std::size_t k = 0; k < blocks_[b].members.size(); ++k) {
        const std::size_t i = blocks_[b].members[k];
        const std::size_t t = maps[m].target[i];
        if (t == kNone) continue;
        const std::size_t tb = block_of_[t];
        auto it = std::find_if(gs.begin(), gs.end(), [&](const Group& g) { return g.target == tb; });
        if (it == gs.end()) {
          gs.push_back(Group{tb, {}, {}, {}});
          it = std::prev(gs.end());
        }
        it->src.push_back(static_cast<std::uint32_t>(k));
        it->dst.push_back(static_cast<std::uint32_t>(local_of_[t]));
        it->w.push_back(maps[m].weight[i]);
      }
    }
  }

  // Block-pair support: closure of rho0's pairs under every jump map.
  std::set<std::pair<std::size_t, std::size_t>> support;
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  auto add = [&](std::size_t x, std::size_t y) {
    for (auto p : {std::pair{x, y}, std::pair{y, x}}) {
      if (support.insert(p).second) stack.push_back(p);
    }
  };
  for (Eigen::Index j = 0; j < rho0.cols(); ++j) {
    for (Eigen::Index i = 0; i < rho0.rows(); ++i) {
      if (rho0(i, j) != Complex(0.0)) add(block_of_[i], block_of_[j]);
    }
  }
  if (support.empty()) throw std::invalid_argument("initial density matrix is zero");
  while (!stack.empty()) {
    const auto [x, y] = stack.back();
    stack.pop_back();
    for (std::size_t m = 0; m < maps.size(); ++m) {
      for (const auto& gr : groups_[m][x]) {
        for (const auto& gc : groups_[m][y]) add(gr.target, gc.target);
      }
    }
  }

  pair_lookup_.assign(nb * nb, kNone);
  std::size_t offset = 0;
  std::size_t largest = 0;
  for (const auto& [x, y] : support) {
    pair_lookup_[x * nb + y] = pairs_.size();
    pairs_.push_back(Pair{x, y, offset, kNone});
    const std::size_t n = blocks_[x].members.size() * blocks_[y].members.size();
    offset += n;
    largest = std::max(largest, n);
  }
  for (auto& p : pairs_) p.mirror = pair_lookup_[p.col_block * nb + p.row_block];
  rho_.assign(offset, Complex(0.0));
  next_.assign(offset, Complex(0.0));
  scratch_.resize(static_cast<Eigen::Index>(largest), 1);

  for (std::size_t m = 0; m < maps.size(); ++m) {
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      for (const auto& gr : groups_[m][pairs_[p].row_block]) {
        for (const auto& gc : groups_[m][pairs_[p].col_block]) {
          transfers_.push_back(
              Transfer{p, pair_index(gr.target, gc.target), &gr, &gc, maps[m].rate});
        }
      }
    }
  }

  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      const Complex v = rho0(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (v == Complex(0.0)) continue;
      const Pair& p = pairs_[pair_index(block_of_[i], block_of_[j])];
      rho_[p.offset + local_of_[j] * blocks_[p.row_block].members.size() + local_of_[i]] = v;
    }
  }

  // Independent diagonal blocks of rho for the eigenvalue monitor.
  std::vector<std::size_t> comp(nb);
  std::iota(comp.begin(), comp.end(), std::size_t{0});
  auto cfind = [&](std::size_t x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  std::vector<bool> touched(nb, false);
  for (const auto& p : pairs_) {
    touched[p.row_block] = touched[p.col_block] = true;
    const std::size_t a = cfind(p.row_block), b = cfind(p.col_block);
    if (a != b) comp[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> comp_index(nb, kNone);
  for (std::size_t b = 0; b < nb; ++b) {
    if (!touched[b]) {
      has_unsupported_ = true;
      continue;
    }
    const std::size_t r = cfind(b);
    if (comp_index[r] == kNone) {
      comp_index[r] = components_.size();
      components_.emplace_back();
    }
    components_[comp_index[r]].push_back(b);
  }
}

std::size_t Propagator::pair_index(std::size_t row_block, std::size_t col_block) const {
  const std::size_t p = pair_lookup_[row_block * blocks_.size() + col_block];
  if (p == kNone) throw std::logic_error("block pair outside the support");
  return p;
}

StepReport Propagator::step() {
  const auto& k = *kernels_;

  // Unitary part, in place.
  for (const auto& p : pairs_) {
    const Block& bx = blocks_[p.row_block];
    const Block& by = blocks_[p.col_block];
    const auto nx = static_cast<Eigen::Index>(bx.members.size());
    const auto ny = static_cast<Eigen::Index>(by.members.size());
    Eigen::Map<DenseMatrix> r(rho_.data() + p.offset, nx, ny);
    if (nx == 1 && ny == 1) {
      r(0, 0) *= bx.u(0, 0) * by.u_adj(0, 0);
      continue;
    }
    double* rd = reinterpret_cast<double*>(r.data());
    double* tmp = reinterpret_cast<double*>(scratch_.data());
    k.zgemm(nx, ny, nx, reinterpret_cast<const double*>(bx.u.data()), rd, tmp);
    k.zgemm(nx, ny, ny, tmp, reinterpret_cast<const double*>(by.u_adj.data()), rd);
  }

  // No-jump part, then jumps.
  for (const auto& p : pairs_) {
    const Block& bx = blocks_[p.row_block];
    const Block& by = blocks_[p.col_block];
    k.decay_copy(data(rho_, p), data(next_, p), bx.members.size(), by.members.size(),
                 bx.decay.data(), by.decay.data());
  }
  for (const auto& t : transfers_) {
    const Pair& sp = pairs_[t.src_pair];
    const Pair& dp = pairs_[t.dst_pair];
    const std::size_t src_rows = blocks_[sp.row_block].members.size();
    const std::size_t dst_rows = blocks_[dp.row_block].members.size();
    const double* src = data(rho_, sp);
    double* dst = data(next_, dp);
    const double scale = t.rate * dt_;
    const Group& rows = *t.rows;
    const Group& cols = *t.cols;
    for (std::size_t c = 0; c < cols.src.size(); ++c) {
      k.scatter_axpy(rows.src.size(), rows.src.data(), rows.dst.data(), rows.w.data(),
                     scale * cols.w[c], src + 2 * cols.src[c] * src_rows,
                     dst + 2 * cols.dst[c] * dst_rows);
    }
  }

  // Symmetrize, measure, renormalize.
  StepReport report;
  double tr = 0.0;
  for (std::size_t q = 0; q < pairs_.size(); ++q) {
    const Pair& p = pairs_[q];
    if (p.mirror < q) continue;
    const auto nx = static_cast<Eigen::Index>(blocks_[p.row_block].members.size());
    const auto ny = static_cast<Eigen::Index>(blocks_[p.col_block].members.size());
    Eigen::Map<DenseMatrix> x(next_.data() + p.offset, nx, ny);
    Eigen::Map<DenseMatrix> y(next_.data() + pairs_[p.mirror].offset, ny, nx);
    double dev = 0.0;
    for (Eigen::Index j = 0; j < ny; ++j) {
      for (Eigen::Index i = 0; i < nx; ++i) {
        dev = std::max(dev, std::abs(x(i, j) - std::conj(y(j, i))));
      }
    }
    report.hermiticity_deviation = std::max(report.hermiticity_deviation, dev);
    if (p.mirror == q) {
      x = (0.5 * (x + x.adjoint())).eval();
      tr += x.trace().real();
    } else {
      x = 0.5 * (x + y.adjoint());
      y = x.adjoint();
    }
  }
  report.trace_drift = std::abs(tr - 1.0);
  if (!(report.trace_drift <= kMaxStepDrift)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "trace drift %.3g exceeds %.0e in one step; reduce dt",
                  report.trace_drift, kMaxStepDrift);
    throw TraceDriftError(buf);
  }
  k.scale(reinterpret_cast<double*>(next_.data()), next_.size(), 1.0 / tr);
  rho_.swap(next_);
  return report;
}

DenseMatrix Propagator::density() const {
  DenseMatrix out = DenseMatrix::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (const auto& p : pairs_) {
    const auto& rows = blocks_[p.row_block].members;
    const auto& cols = blocks_[p.col_block].members;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      for (std::size_t i = 0; i < rows.size(); ++i) {
        out(static_cast<Eigen::Index>(rows[i]), static_cast<Eigen::Index>(cols[j])) =
            rho_[p.offset + j * rows.size() + i];
      }
    }
  }
  return out;
}

Complex Propagator::expectation(const SparseOperator& op) const {
  if (op.dim() != dim_) throw std::invalid_argument("observable: dimension mismatch");
  const std::size_t nb = blocks_.size();
  Complex sum = 0.0;
  for (const auto& t : op.entries()) {
    // tr(P rho) = sum P(i,j) rho(j,i).
    const std::size_t p = pair_lookup_[block_of_[t.col] * nb + block_of_[t.row]];
    if (p == kNone) continue;
    const Pair& pr = pairs_[p];
    sum += t.value *
           rho_[pr.offset + local_of_[t.row] * blocks_[pr.row_block].members.size() + local_of_[t.col]];
  }
  return sum;
}

double Propagator::trace() const {
  double tr = 0.0;
  for (std::size_t q = 0; q < pairs_.size(); ++q) {
    const Pair& p = pairs_[q];
    if (p.mirror != q) continue;
    const std::size_t n = blocks_[p.row_block].members.size();
    for (std::size_t i = 0; i < n; ++i) tr += rho_[p.offset + i * n + i].real();
  }
  return tr;
}

double Propagator::min_eigenvalue() const {
  double lowest = has_unsupported_ ? 0.0 : std::numeric_limits<double>::infinity();
  const std::size_t nb = blocks_.size();
  for (const auto& comp : components_) {
    std::vector<std::size_t> start(comp.size());
    std::size_t n = 0;
    for (std::size_t a = 0; a < comp.size(); ++a) {
      start[a] = n;
      n += blocks_[comp[a]].members.size();
    }
    DenseMatrix m = DenseMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t a = 0; a < comp.size(); ++a) {
      for (std::size_t b = 0; b < comp.size(); ++b) {
        const std::size_t p = pair_lookup_[comp[a] * nb + comp[b]];
        if (p == kNone) continue;
        const auto nx = static_cast<Eigen::Index>(blocks_[comp[a]].members.size());
        const auto ny = static_cast<Eigen::Index>(blocks_[comp[b]].members.size());
        m.block(static_cast<Eigen::Index>(start[a]), static_cast<Eigen::Index>(start[b]), nx, ny) =
            Eigen::Map<const DenseMatrix>(rho_.data() + pairs_[p].offset, nx, ny);
      }
    }
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(m, Eigen::EigenvaluesOnly);
    lowest = std::min(lowest, es.eigenvalues().minCoeff());
  }
  return lowest;
}

// ---------------------------------------------------------------------------

TimeSeries evolve(const SparseOperator& h, const std::vector<DissipationChannel>& channels,
                  const DenseMatrix& rho0, const std::vector<Observable>& observables,
                  const EvolveOptions& options) {
  if (options.stride == 0) throw std::invalid_argument("stride must be at least 1");
  Propagator prop(h, channels, options.dt, rho0);
  TimeSeries out;
  for (const auto& o : observables) out.labels.push_back(o.label);
  out.min_eig = std::numeric_limits<double>::infinity();

  auto record = [&](std::size_t n) {
    Sample s;
    s.step = n;
    s.time = static_cast<double>(n) * options.dt;
    for (const auto& o : observables) s.values.push_back(prop.expectation(o.op).real());
    s.trace_drift = out.cumulative_drift;
    s.min_eig = options.track_min_eig ? prop.min_eigenvalue() : 0.0;
    out.min_eig = std::min(out.min_eig, s.min_eig);
    out.samples.push_back(std::move(s));
  };

  record(0);
  for (std::size_t n = 1; n <= options.steps; ++n) {
    StepReport r;
    try {
      r = prop.step();
    } catch (const TraceDriftError& e) {
      throw TraceDriftError(std::string(e.what()) + " (step " + std::to_string(n) + ")");
    }
    out.max_step_drift = std::max(out.max_step_drift, r.trace_drift);
    out.cumulative_drift += r.trace_drift;
    out.max_hermiticity_deviation = std::max(out.max_hermiticity_deviation, r.hermiticity_deviation);
    if (n % options.stride == 0 || n == options.steps) record(n);
  }
  out.final_state = prop.density();
  return out;
}

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string to_csv(const TimeSeries& series) {
  std::string out = "step,time";
  for (const auto& l : series.labels) out += "," + l;
  out += ",trace_drift,min_eig\n";
  for (const auto& s : series.samples) {
    out += std::to_string(s.step) + "," + format_number(s.time);
    for (double v : s.values) out += "," + format_number(v);
    out += "," + format_number(s.trace_drift) + "," + format_number(s.min_eig) + "\n";
  }
  return out;
}

}  // namespace tchsim
