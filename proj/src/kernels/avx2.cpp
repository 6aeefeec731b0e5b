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

// Compiled with -mavx2 -mfma; only reached after a CPUID check.

#include <immintrin.h>

#include "cascade/kernels/kernels.hpp"

namespace cascade::kernels {
namespace {

// Two interleaved complex doubles per register: [re0, im0, re1, im1].

// (ar + i ai) * x for a broadcast scalar.
inline __m256d cmul_broadcast(__m256d ar, __m256d ai, __m256d x) {
  const __m256d swapped = _mm256_permute_pd(x, 0b0101);
  return _mm256_fmaddsub_pd(ar, x, _mm256_mul_pd(ai, swapped));
}

// Lane-wise complex product a * x.
inline __m256d cmul(__m256d a, __m256d x) {
  const __m256d ar = _mm256_movedup_pd(a);
  const __m256d ai = _mm256_permute_pd(a, 0b1111);
  return cmul_broadcast(ar, ai, x);
}

inline cd hsum_complex(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return {_mm_cvtsd_f64(s), _mm_cvtsd_f64(_mm_unpackhi_pd(s, s))};
}

void axpy(std::size_t n, cd a, const cd* x, cd* y) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  auto* xd = reinterpret_cast<const double*>(x);
  auto* yd = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x0 = _mm256_loadu_pd(xd + 2 * i);
    const __m256d x1 = _mm256_loadu_pd(xd + 2 * i + 4);
    __m256d y0 = _mm256_loadu_pd(yd + 2 * i);
    __m256d y1 = _mm256_loadu_pd(yd + 2 * i + 4);
    y0 = _mm256_add_pd(y0, cmul_broadcast(ar, ai, x0));
    y1 = _mm256_add_pd(y1, cmul_broadcast(ar, ai, x1));
    _mm256_storeu_pd(yd + 2 * i, y0);
    _mm256_storeu_pd(yd + 2 * i + 4, y1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d x0 = _mm256_loadu_pd(xd + 2 * i);
    const __m256d y0 = _mm256_loadu_pd(yd + 2 * i);
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(y0, cmul_broadcast(ar, ai, x0)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

double norm2(std::size_t n, const cd* x) {
  auto* xd = reinterpret_cast<const double*>(x);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(xd + 2 * i);
    const __m256d v1 = _mm256_loadu_pd(xd + 2 * i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d v0 = _mm256_loadu_pd(xd + 2 * i);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
  }
  const cd s = hsum_complex(_mm256_add_pd(acc0, acc1));
  double total = s.real() + s.imag();
  for (; i < n; ++i) total += std::norm(x[i]);
  return total;
}

cd dotc(std::size_t n, const cd* x, const cd* y) {
  auto* xd = reinterpret_cast<const double*>(x);
  auto* yd = reinterpret_cast<const double*>(y);
  // direct: [xr*yr, xi*yi]   cross: [xr*yi, xi*yr]
  __m256d direct = _mm256_setzero_pd();
  __m256d cross = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    direct = _mm256_fmadd_pd(xv, yv, direct);
    cross = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), cross);
  }
  const cd d = hsum_complex(direct);
  const cd c = hsum_complex(cross);
  cd total{d.real() + d.imag(), c.real() - c.imag()};
  for (; i < n; ++i) total += std::conj(x[i]) * y[i];
  return total;
}

void csr_matvec(const CsrView& a, cd alpha, const cd* x, cd* y, bool accumulate) {
  auto* vd = reinterpret_cast<const double*>(a.values);
  auto* xd = reinterpret_cast<const double*>(x);
  for (std::size_t r = 0; r < a.rows; ++r) {
    auto k = a.row_ptr[r];
    const auto end = a.row_ptr[r + 1];
    __m256d acc = _mm256_setzero_pd();
    for (; k + 2 <= end; k += 2) {
      const __m256d av = _mm256_loadu_pd(vd + 2 * k);
      const __m256d xv =
          _mm256_set_m128d(_mm_loadu_pd(xd + 2 * static_cast<std::size_t>(a.col_idx[k + 1])),
                           _mm_loadu_pd(xd + 2 * static_cast<std::size_t>(a.col_idx[k])));
      acc = _mm256_add_pd(acc, cmul(av, xv));
    }
    cd sum = hsum_complex(acc);
    if (k < end) sum += a.values[k] * x[a.col_idx[k]];
    y[r] = accumulate ? y[r] + alpha * sum : alpha * sum;
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

const KernelTable& avx2_table_impl() {
  static const KernelTable table{"avx2", axpy, norm2, dotc, csr_matvec, csr_matmul};
  return table;
}

}  // namespace cascade::kernels
