// Copyright 2026 The Cascade Authors
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

// Data-parallel inner loops shared by the master-equation integrator and the
// trajectory propagator. Every kernel has a scalar reference implementation
// and, on x86-64, an AVX2/FMA variant; the active table is chosen once at
// startup from CPUID and can be pinned with CASCADE_SIMD=scalar|avx2.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace cascade::kernels {

using cd = std::complex<double>;

// Non-owning view of a square or rectangular CSR matrix.
struct CsrView {
  std::size_t rows = 0;
  std::size_t cols = 0;
  const std::int32_t* row_ptr = nullptr;  // rows + 1 entries
  const std::int32_t* col_idx = nullptr;
  const cd* values = nullptr;
};

struct KernelTable {
  const char* name;
  // y += a * x
  void (*axpy)(std::size_t n, cd a, const cd* x, cd* y);
  // sum_i |x_i|^2
  double (*norm2)(std::size_t n, const cd* x);
  // sum_i conj(x_i) * y_i
  cd (*dotc)(std::size_t n, const cd* x, const cd* y);
  // y = alpha * A x           (accumulate == false)
  // y += alpha * A x          (accumulate == true)
  void (*csr_matvec)(const CsrView& a, cd alpha, const cd* x, cd* y, bool accumulate);
  // Y = alpha * A X  /  Y += alpha * A X, X and Y row-major with `ncols` columns.
  void (*csr_matmul)(const CsrView& a, cd alpha, const cd* x, std::size_t ncols, cd* y,
                     bool accumulate);
};

const KernelTable& scalar_table();
// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();

// Table used by the library. Resolved on first use.
const KernelTable& active();
// Overrides the active table; "scalar", "avx2" or "auto". Returns false if the
// requested variant is unavailable (the active table is then left unchanged).
bool select(std::string_view variant);

}  // namespace cascade::kernels
