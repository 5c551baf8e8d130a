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

#include <immintrin.h>

#include "tnpart/kernels/cgemm.hpp"

namespace tnpart::kernels {

// Two complex outputs per ymm register: [re0 im0 re1 im1]. For each p the
// products ar*b and ai*swap(b) are combined with addsub, which rounds exactly
// like the scalar expression (ar*br - ai*bi, ar*bi + ai*br).
void cgemm_avx2(std::size_t m, std::size_t k, std::size_t n, const cplx* a, const cplx* b, cplx* c) {
  const auto* bd = reinterpret_cast<const double*>(b);
  auto* cd = reinterpret_cast<double*>(c);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t p = 0; p < k; ++p) {
        const __m256d ar = _mm256_set1_pd(a[i * k + p].real());
        const __m256d ai = _mm256_set1_pd(a[i * k + p].imag());
        const __m256d bv = _mm256_loadu_pd(bd + 2 * (p * n + j));
        const __m256d bs = _mm256_permute_pd(bv, 0x5);
        const __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(ar, bv), _mm256_mul_pd(ai, bs));
        acc = _mm256_add_pd(acc, prod);
      }
      _mm256_storeu_pd(cd + 2 * (i * n + j), acc);
    }
    for (; j < n; ++j) {
      double re = 0.0, im = 0.0;
      for (std::size_t p = 0; p < k; ++p) {
        const double ar = a[i * k + p].real(), ai = a[i * k + p].imag();
        const double br = b[p * n + j].real(), bi = b[p * n + j].imag();
        re += ar * br - ai * bi;
        im += ar * bi + ai * br;
      }
      c[i * n + j] = {re, im};
    }
  }
}

}  // namespace tnpart::kernels
