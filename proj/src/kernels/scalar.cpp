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

#include "cascade/kernels/kernels.hpp"

namespace cascade::kernels {
namespace {

void axpy(std::size_t n, cd a, const cd* x, cd* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double norm2(std::size_t n, const cd* x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(x[i]);
  return acc;
}

cd dotc(std::size_t n, const cd* x, const cd* y) {
  cd acc{};
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

void csr_matvec(const CsrView& a, cd alpha, const cd* x, cd* y, bool accumulate) {
  for (std::size_t r = 0; r < a.rows; ++r) {
    cd acc{};
    for (auto k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) acc += a.values[k] * x[a.col_idx[k]];
    y[r] = accumulate ? y[r] + alpha * acc : alpha * acc;
  }
}

void csr_matmul(const CsrView& a, cd alpha, const cd* x, std::size_t ncols, cd* y,
                bool accumulate) {
  for (std::size_t r = 0; r < a.rows; ++r) {
    cd* yr = y + r * ncols;
    if (!accumulate) {
      for (std::size_t j = 0; j < ncols; ++j) yr[j] = cd{};
    }
    for (auto k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
      axpy(ncols, alpha * a.values[k], x + static_cast<std::size_t>(a.col_idx[k]) * ncols, yr);
    }
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", axpy, norm2, dotc, csr_matvec, csr_matmul};
  return table;
}

}  // namespace cascade::kernels
