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

#include <vector>

#include "tnpart/kernels/cgemm.hpp"

namespace tnpart::kernels {

void permute(std::size_t rank, const std::size_t* dims, const std::size_t* perm, const cplx* in, cplx* out) {
  std::size_t total = 1;
  for (std::size_t a = 0; a < rank; ++a) total *= dims[a];
  if (rank == 0) {
    out[0] = in[0];
    return;
  }
  std::vector<std::size_t> in_stride(rank), stride(rank), odims(rank), idx(rank, 0);
  in_stride[rank - 1] = 1;
  for (std::size_t a = rank - 1; a > 0; --a) in_stride[a - 1] = in_stride[a] * dims[a];
  for (std::size_t a = 0; a < rank; ++a) {
    odims[a] = dims[perm[a]];
    stride[a] = in_stride[perm[a]];
  }
  std::size_t src = 0;
  for (std::size_t o = 0; o < total; ++o) {
    out[o] = in[src];
    for (std::size_t a = rank; a-- > 0;) {
      src += stride[a];
      if (++idx[a] < odims[a]) break;
      src -= stride[a] * odims[a];
      idx[a] = 0;
    }
  }
}

}  // namespace tnpart::kernels
