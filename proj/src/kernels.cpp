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


#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace tchsim::kernels {

const Table& scalar_table() {
  static const Table t{Isa::Scalar, scalar::decay_copy, scalar::scatter_axpy, scalar::scale, scalar::zgemm};
  return t;
}

bool cpu_has_avx2() {
#if defined(TCHSIM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

const Table& avx2_table() {
#ifdef TCHSIM_HAVE_AVX2
  static const Table t{Isa::Avx2, avx2::decay_copy, avx2::scatter_axpy, avx2::scale, avx2::zgemm};
  if (cpu_has_avx2()) return t;
#endif
  return scalar_table();
}

const Table& select(Isa isa) { return isa == Isa::Avx2 ? avx2_table() : scalar_table(); }

const Table& active() {
  static const Table& t = [] () -> const Table& {
    const char* env = std::getenv("TCHSIM_ISA");
    if (env && std::string_view(env) == "scalar") return scalar_table();
    return avx2_table();
  }();
  return t;
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

}  // namespace tchsim::kernels
