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

#include "tchsim/kernels.hpp"

namespace tchsim::kernels {

namespace scalar {
void decay_copy(const double* src, double* dst, std::size_t rows, std::size_t cols,
                const double* f_row, const double* f_col);
void scatter_axpy(std::size_t n, const std::uint32_t* src, const std::uint32_t* dst,
                  const double* w, double scale, const double* x, double* y);
void scale(double* x, std::size_t n, double s);
void zgemm(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b,
           double* c);
}  // namespace scalar

#ifdef TCHSIM_HAVE_AVX2
namespace avx2 {
void decay_copy(const double* src, double* dst, std::size_t rows, std::size_t cols,
                const double* f_row, const double* f_col);
void scatter_axpy(std::size_t n, const std::uint32_t* src, const std::uint32_t* dst,
                  const double* w, double scale, const double* x, double* y);
void scale(double* x, std::size_t n, double s);
void zgemm(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b,
           double* c);
}  // namespace avx2
#endif

}  // namespace tchsim::kernels
