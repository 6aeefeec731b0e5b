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

#include <cstdint>
#include <span>
#include <vector>

#include "cascade/hilbert/space.hpp"
#include "cascade/kernels/kernels.hpp"

namespace cascade {

struct Triplet {
  std::size_t row;
  std::size_t col;
  cd value;
};

// Complex matrix on a tagged space, stored in CSR form. Immutable after
// construction, so instances can be shared freely across worker threads.
class Operator {
 public:
  // Duplicate (row, col) entries are summed and exact zeros dropped.
  Operator(SpaceSpec space, std::span<const Triplet> entries);
  static Operator from_dense(SpaceSpec space, const CMatrix& m);
  static Operator identity(SpaceSpec space);
  static Operator zero(SpaceSpec space);

  const SpaceSpec& space() const noexcept { return space_; }
  std::size_t dim() const noexcept { return space_.dim(); }
  std::size_t nnz() const noexcept { return values_.size(); }

  cd at(std::size_t row, std::size_t col) const;
  CMatrix to_dense() const;
  std::vector<Triplet> triplets() const;
  kernels::CsrView view() const noexcept;

  Operator adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;
  // max_ij |A_ij - B_ij|
  double max_abs_diff(const Operator& other) const;

  // out = alpha * A * in, or out += alpha * A * in.
  void apply(std::span<const cd> in, std::span<cd> out, cd alpha = 1.0,
             bool accumulate = false) const;
  CVector apply(const CVector& in) const;
  // Sparse times dense (row-major) product.
  CMatrix apply(const CMatrix& in) const;

  friend Operator operator+(const Operator& a, const Operator& b);
  friend Operator operator-(const Operator& a, const Operator& b);
  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator*(cd s, const Operator& a);
  friend Operator operator*(const Operator& a, cd s) { return s * a; }

 private:
  Operator(SpaceSpec space) : space_(space), row_ptr_(space.dim() + 1, 0) {}

  SpaceSpec space_;
  std::vector<std::int32_t> row_ptr_;
  std::vector<std::int32_t> col_idx_;
  std::vector<cd> values_;
};

}  // namespace cascade
