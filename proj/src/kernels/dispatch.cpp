// Copyright 2026 The tnpart Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "tnpart/kernels/cgemm.hpp"

namespace tnpart::kernels {

namespace {

Isa initial_isa() {
  const char* env = std::getenv("TNPART_KERNEL");
  if (env != nullptr) {
    const std::string s(env);
    if (s == "scalar") return Isa::Scalar;
    if (s == "avx2" && cpu_has_avx2()) return Isa::Avx2;
  }
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool has = __builtin_cpu_supports("avx2");
  return has;
#else
  return false;
#endif
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (isa == Isa::Avx2 && !cpu_has_avx2()) throw std::invalid_argument("CPU lacks AVX2");
  current().store(isa, std::memory_order_relaxed);
}

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void cgemm(std::size_t m, std::size_t k, std::size_t n, const cplx* a, const cplx* b, cplx* c) {
  if (active_isa() == Isa::Avx2) {
    cgemm_avx2(m, k, n, a, b, c);
  } else {
    cgemm_scalar(m, k, n, a, b, c);
  }
}

}  // namespace tnpart::kernels
