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

#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace tnpart::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

/// C[m x n] = A[m x k] * B[k x n], row-major, C overwritten. Each output sums
/// k in ascending order; every variant returns bit-identical results.
void cgemm_scalar(std::size_t m, std::size_t k, std::size_t n, const cplx* a, const cplx* b, cplx* c);
void cgemm_avx2(std::size_t m, std::size_t k, std::size_t n, const cplx* a, const cplx* b, cplx* c);

/// Dispatching entry point.
void cgemm(std::size_t m, std::size_t k, std::size_t n, const cplx* a, const cplx* b, cplx* c);

bool cpu_has_avx2();
/// Active variant. Starts from TNPART_KERNEL (scalar|avx2) if set, else the best supported.
Isa active_isa();
/// Throws std::invalid_argument if the requested variant is unsupported.
void set_isa(Isa isa);
std::string_view to_string(Isa isa);

/// out[j] = in[i] where j's multi-index is i's multi-index permuted by perm:
/// out axis a is input axis perm[a].
void permute(std::size_t rank, const std::size_t* dims, const std::size_t* perm, const cplx* in, cplx* out);

}  // namespace tnpart::kernels
