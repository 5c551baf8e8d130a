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

#include "tnpart/kernels/cgemm.hpp"

namespace tnpart::kernels {

void cgemm_scalar(std::size_t m, std::size_t k, std::size_t n, const cplx* a, const cplx* b, cplx* c) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
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
