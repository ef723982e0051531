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
#include <cstdint>

// Elementwise kernels of the block density-matrix step. Complex numbers are
// passed as interleaved (re, im) doubles; matrices are column-major.
namespace tchsim::kernels {

enum class Isa : std::uint8_t { Scalar, Avx2 };

struct Table {
  Isa isa;

  // dst(i,j) = src(i,j) * f_row[i] * f_col[j].
  void (*decay_copy)(const double* src, double* dst, std::size_t rows, std::size_t cols,
                     const double* f_row, const double* f_col);

  // y[dst[k]] += scale * w[k] * x[src[k]] for k < n.
  void (*scatter_axpy)(std::size_t n, const std::uint32_t* src, const std::uint32_t* dst,
                       const double* w, double scale, const double* x, double* y);

  // x *= s over n complex values.
  void (*scale)(double* x, std::size_t n, double s);

  // C = A * B for complex column-major A (m x k), B (k x n), C (m x n) with
  // leading dimensions equal to the row counts. C must not alias A or B.
  void (*zgemm)(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b,
                double* c);
};

const Table& scalar_table();
// Falls back to the scalar table when the binary was built without AVX2
// support.
const Table& avx2_table();

bool cpu_has_avx2();

// AVX2 when the CPU supports it, unless TCHSIM_ISA=scalar is set.
const Table& active();
const Table& select(Isa isa);

const char* isa_name(Isa isa);

}  // namespace tchsim::kernels
