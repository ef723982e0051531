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


// Compiled with -mavx2 -mfma; only reached after a runtime CPU check. Keep
// this file free of inline library code shared with other translation units.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace tchsim::kernels::avx2 {

void decay_copy(const double* src, double* dst, std::size_t rows, std::size_t cols,
                const double* f_row, const double* f_col) {
  for (std::size_t j = 0; j < cols; ++j) {
    const double* s = src + 2 * j * rows;
    double* d = dst + 2 * j * rows;
    const __m256d fc = _mm256_set1_pd(f_col[j]);
    std::size_t i = 0;
    // Two complex entries per iteration; the row factors are duplicated into
    // the (re, im) lanes.
    for (; i + 2 <= rows; i += 2) {
      const __m128d fr = _mm_loadu_pd(f_row + i);
      const __m256d frr = _mm256_permute4x64_pd(_mm256_castpd128_pd256(fr), 0x50);
      // Same rounding order as the scalar kernel: (f_row * f_col) * src.
      const __m256d f = _mm256_mul_pd(frr, fc);
      _mm256_storeu_pd(d + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(s + 2 * i), f));
    }
    for (; i < rows; ++i) {
      const double f = f_row[i] * f_col[j];
      d[2 * i] = s[2 * i] * f;
      d[2 * i + 1] = s[2 * i + 1] * f;
    }
  }
}

void scatter_axpy(std::size_t n, const std::uint32_t* src, const std::uint32_t* dst,
                  const double* w, double scale, const double* x, double* y) {
  const __m128d sc = _mm_set1_pd(scale);
  for (std::size_t k = 0; k < n; ++k) {
    const __m128d c = _mm_mul_pd(sc, _mm_set1_pd(w[k]));
    double* out = y + 2 * dst[k];
    _mm_storeu_pd(out, _mm_fmadd_pd(c, _mm_loadu_pd(x + 2 * src[k]), _mm_loadu_pd(out)));
  }
}

void scale(double* x, std::size_t n, double s) {
  const __m256d v = _mm256_set1_pd(s);
  std::size_t k = 0;
  for (; k + 4 <= 2 * n; k += 4) _mm256_storeu_pd(x + k, _mm256_mul_pd(_mm256_loadu_pd(x + k), v));
  for (; k < 2 * n; ++k) x[k] *= s;
}

namespace {

// Accumulates a * b split into a*re(b) and swap(a)*im(b); fmaddsub/addsub
// recombines them into the complex product.
inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0x5); }

// Rows [i, i + 4) of two columns j0, j1 of C.
inline void tile_4x2(std::size_t m, std::size_t k, const double* a, const double* b0,
                     const double* b1, double* c0, double* c1, std::size_t i) {
  __m256d r00 = _mm256_setzero_pd(), r01 = _mm256_setzero_pd();
  __m256d r10 = _mm256_setzero_pd(), r11 = _mm256_setzero_pd();
  __m256d s00 = _mm256_setzero_pd(), s01 = _mm256_setzero_pd();
  __m256d s10 = _mm256_setzero_pd(), s11 = _mm256_setzero_pd();
  for (std::size_t l = 0; l < k; ++l) {
    const double* al = a + 2 * (l * m + i);
    const __m256d a0 = _mm256_loadu_pd(al);
    const __m256d a1 = _mm256_loadu_pd(al + 4);
    const __m256d x0 = swap_pairs(a0);
    const __m256d x1 = swap_pairs(a1);
    const __m256d br0 = _mm256_broadcast_sd(b0 + 2 * l);
    const __m256d bi0 = _mm256_broadcast_sd(b0 + 2 * l + 1);
    const __m256d br1 = _mm256_broadcast_sd(b1 + 2 * l);
    const __m256d bi1 = _mm256_broadcast_sd(b1 + 2 * l + 1);
    r00 = _mm256_fmadd_pd(a0, br0, r00);
    r01 = _mm256_fmadd_pd(a1, br0, r01);
    s00 = _mm256_fmadd_pd(x0, bi0, s00);
    s01 = _mm256_fmadd_pd(x1, bi0, s01);
    r10 = _mm256_fmadd_pd(a0, br1, r10);
    r11 = _mm256_fmadd_pd(a1, br1, r11);
    s10 = _mm256_fmadd_pd(x0, bi1, s10);
    s11 = _mm256_fmadd_pd(x1, bi1, s11);
  }
  _mm256_storeu_pd(c0 + 2 * i, _mm256_addsub_pd(r00, s00));
  _mm256_storeu_pd(c0 + 2 * i + 4, _mm256_addsub_pd(r01, s01));
  _mm256_storeu_pd(c1 + 2 * i, _mm256_addsub_pd(r10, s10));
  _mm256_storeu_pd(c1 + 2 * i + 4, _mm256_addsub_pd(r11, s11));
}

// Rows [i, i + 2) of one column.
inline void tile_2x1(std::size_t m, std::size_t k, const double* a, const double* bj, double* cj,
                     std::size_t i) {
  __m256d r = _mm256_setzero_pd(), s = _mm256_setzero_pd();
  for (std::size_t l = 0; l < k; ++l) {
    const __m256d av = _mm256_loadu_pd(a + 2 * (l * m + i));
    r = _mm256_fmadd_pd(av, _mm256_broadcast_sd(bj + 2 * l), r);
    s = _mm256_fmadd_pd(swap_pairs(av), _mm256_broadcast_sd(bj + 2 * l + 1), s);
  }
  _mm256_storeu_pd(cj + 2 * i, _mm256_addsub_pd(r, s));
}

inline void tile_1x1(std::size_t m, std::size_t k, const double* a, const double* bj, double* cj,
                     std::size_t i) {
  __m128d r = _mm_setzero_pd(), s = _mm_setzero_pd();
  for (std::size_t l = 0; l < k; ++l) {
    const __m128d av = _mm_loadu_pd(a + 2 * (l * m + i));
    r = _mm_fmadd_pd(av, _mm_set1_pd(bj[2 * l]), r);
    s = _mm_fmadd_pd(_mm_permute_pd(av, 0x1), _mm_set1_pd(bj[2 * l + 1]), s);
  }
  _mm_storeu_pd(cj + 2 * i, _mm_addsub_pd(r, s));
}

}  // namespace

void zgemm(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b,
           double* c) {
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const double* b0 = b + 2 * j * k;
    const double* b1 = b0 + 2 * k;
    double* c0 = c + 2 * j * m;
    double* c1 = c0 + 2 * m;
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) tile_4x2(m, k, a, b0, b1, c0, c1, i);
    for (; i + 2 <= m; i += 2) {
      tile_2x1(m, k, a, b0, c0, i);
      tile_2x1(m, k, a, b1, c1, i);
    }
    for (; i < m; ++i) {
      tile_1x1(m, k, a, b0, c0, i);
      tile_1x1(m, k, a, b1, c1, i);
    }
  }
  for (; j < n; ++j) {
    const double* bj = b + 2 * j * k;
    double* cj = c + 2 * j * m;
    std::size_t i = 0;
    for (; i + 2 <= m; i += 2) tile_2x1(m, k, a, bj, cj, i);
    for (; i < m; ++i) tile_1x1(m, k, a, bj, cj, i);
  }
}

}  // namespace tchsim::kernels::avx2
