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


#include "kernels_impl.hpp"

namespace tchsim::kernels::scalar {

void decay_copy(const double* src, double* dst, std::size_t rows, std::size_t cols,
                const double* f_row, const double* f_col) {
  for (std::size_t j = 0; j < cols; ++j) {
    const double* s = src + 2 * j * rows;
    double* d = dst + 2 * j * rows;
    for (std::size_t i = 0; i < rows; ++i) {
      const double f = f_row[i] * f_col[j];
      d[2 * i] = s[2 * i] * f;
      d[2 * i + 1] = s[2 * i + 1] * f;
    }
  }
}

void scatter_axpy(std::size_t n, const std::uint32_t* src, const std::uint32_t* dst,
                  const double* w, double scale, const double* x, double* y) {
  for (std::size_t k = 0; k < n; ++k) {
    const double c = scale * w[k];
    y[2 * dst[k]] += c * x[2 * src[k]];
    y[2 * dst[k] + 1] += c * x[2 * src[k] + 1];
  }
}

void scale(double* x, std::size_t n, double s) {
  for (std::size_t k = 0; k < 2 * n; ++k) x[k] *= s;
}

void zgemm(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b,
           double* c) {
  for (std::size_t j = 0; j < n; ++j) {
    double* cj = c + 2 * j * m;
    for (std::size_t i = 0; i < 2 * m; ++i) cj[i] = 0.0;
    for (std::size_t l = 0; l < k; ++l) {
      const double br = b[2 * (j * k + l)];
      const double bi = b[2 * (j * k + l) + 1];
      const double* al = a + 2 * l * m;
      for (std::size_t i = 0; i < m; ++i) {
        cj[2 * i] += al[2 * i] * br - al[2 * i + 1] * bi;
        cj[2 * i + 1] += al[2 * i] * bi + al[2 * i + 1] * br;
      }
    }
  }
}

}  // namespace tchsim::kernels::scalar
