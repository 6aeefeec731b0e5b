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

#include "cascade/hilbert/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "cascade/error.hpp"

namespace cascade {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidDimension: return "invalid dimension";
    case ErrorCode::kSpaceMismatch: return "space mismatch";
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kNotNormalized: return "state not normalized";
    case ErrorCode::kStepSize: return "step size";
    case ErrorCode::kImpossibleJump: return "impossible jump";
    case ErrorCode::kPositivityViolation: return "positivity violation";
    case ErrorCode::kNonConvergence: return "non-convergence";
    case ErrorCode::kFitFailure: return "fit failure";
    case ErrorCode::kConfig: return "config";
  }
  return "unknown";
}

SpaceSpec SpaceSpec::fock(std::size_t n_trunc) {
  if (n_trunc < 2) {
    throw SimulationError(ErrorCode::kInvalidDimension,
                          fmt::format("Fock truncation must be >= 2, got {}", n_trunc));
  }
  return SpaceSpec(SpaceKind::kFock, n_trunc);
}

SpaceSpec SpaceSpec::composite(std::size_t n_trunc) {
  if (n_trunc < 2) {
    throw SimulationError(ErrorCode::kInvalidDimension,
                          fmt::format("Fock truncation must be >= 2, got {}", n_trunc));
  }
  return SpaceSpec(SpaceKind::kComposite, n_trunc);
}

std::size_t SpaceSpec::dim() const noexcept {
  switch (kind_) {
    case SpaceKind::kFock: return fock_dim_;
    case SpaceKind::kQubit: return kAtomDim;
    case SpaceKind::kComposite: return fock_dim_ * kAtomDim;
  }
  return 0;
}

SpaceSpec SpaceSpec::laser() const {
  if (kind_ != SpaceKind::kComposite) {
    throw SimulationError(ErrorCode::kSpaceMismatch, "laser() requires a composite space");
  }
  return fock(fock_dim_);
}

SpaceSpec SpaceSpec::atom() const {
  if (kind_ != SpaceKind::kComposite) {
    throw SimulationError(ErrorCode::kSpaceMismatch, "atom() requires a composite space");
  }
  return qubit();
}

std::string SpaceSpec::to_string() const {
  switch (kind_) {
    case SpaceKind::kFock: return fmt::format("Fock({})", fock_dim_);
    case SpaceKind::kQubit: return "Qubit";
    case SpaceKind::kComposite: return fmt::format("Fock({}) x Qubit", fock_dim_);
  }
  return "?";
}

void require_same_space(const SpaceSpec& a, const SpaceSpec& b, const char* where) {
  if (!(a == b)) {
    throw SimulationError(ErrorCode::kSpaceMismatch,
                          fmt::format("{}: {} vs {}", where, a.to_string(), b.to_string()));
  }
}

Operator::Operator(SpaceSpec space, std::span<const Triplet> entries) : Operator(space) {
  const std::size_t d = space.dim();
  std::vector<Triplet> sorted(entries.begin(), entries.end());
  for (const auto& t : sorted) {
    if (t.row >= d || t.col >= d) {
      throw SimulationError(ErrorCode::kInvalidDimension,
                            fmt::format("entry ({}, {}) outside dimension {}", t.row, t.col, d));
    }
    if (!std::isfinite(t.value.real()) || !std::isfinite(t.value.imag())) {
      throw SimulationError(ErrorCode::kInvalidArgument, "operator entries must be finite");
    }
  }
  std::sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::size_t i = 0;
  while (i < sorted.size()) {
    const std::size_t r = sorted[i].row;
    const std::size_t c = sorted[i].col;
    cd sum{};
    for (; i < sorted.size() && sorted[i].row == r && sorted[i].col == c; ++i) sum += sorted[i].value;
    if (sum != cd{}) {
      col_idx_.push_back(static_cast<std::int32_t>(c));
      values_.push_back(sum);
      ++row_ptr_[r + 1];
    }
  }
  for (std::size_t r = 0; r < d; ++r) row_ptr_[r + 1] += row_ptr_[r];
}

Operator Operator::from_dense(SpaceSpec space, const CMatrix& m) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  if (m.rows() != d || m.cols() != d) {
    throw SimulationError(ErrorCode::kInvalidDimension,
                          fmt::format("{}x{} matrix on space of dimension {}", m.rows(), m.cols(), d));
  }
  std::vector<Triplet> t;
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      if (m(r, c) != cd{}) {
        t.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(c), m(r, c)});
      }
    }
  }
  return Operator(space, t);
}

Operator Operator::identity(SpaceSpec space) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < space.dim(); ++i) t.push_back({i, i, 1.0});
  return Operator(space, t);
}

Operator Operator::zero(SpaceSpec space) { return Operator(space); }

cd Operator::at(std::size_t row, std::size_t col) const {
  if (row >= dim() || col >= dim()) {
    throw SimulationError(ErrorCode::kInvalidDimension, "index outside operator dimension");
  }
  const auto begin = col_idx_.begin() + row_ptr_[row];
  const auto end = col_idx_.begin() + row_ptr_[row + 1];
  const auto it = std::lower_bound(begin, end, static_cast<std::int32_t>(col));
  if (it != end && *it == static_cast<std::int32_t>(col)) {
    return values_[static_cast<std::size_t>(it - col_idx_.begin())];
  }
  return {};
}

CMatrix Operator::to_dense() const {
  const auto d = static_cast<Eigen::Index>(dim());
  CMatrix m = CMatrix::Zero(d, d);
  for (std::size_t r = 0; r < dim(); ++r) {
    for (auto k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      m(static_cast<Eigen::Index>(r), col_idx_[k]) = values_[k];
    }
  }
  return m;
}

std::vector<Triplet> Operator::triplets() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (std::size_t r = 0; r < dim(); ++r) {
    for (auto k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      t.push_back({r, static_cast<std::size_t>(col_idx_[k]), values_[k]});
    }
  }
  return t;
}

kernels::CsrView Operator::view() const noexcept {
  return {dim(), dim(), row_ptr_.data(), col_idx_.data(), values_.data()};
}

Operator Operator::adjoint() const {
  auto t = triplets();
  for (auto& e : t) {
    std::swap(e.row, e.col);
    e.value = std::conj(e.value);
  }
  return Operator(space_, t);
}

double Operator::max_abs_diff(const Operator& other) const {
  require_same_space(space_, other.space_, "Operator::max_abs_diff");
  double worst = 0.0;
  for (const auto& e : (*this - other).triplets()) worst = std::max(worst, std::abs(e.value));
  return worst;
}

bool Operator::is_hermitian(double tol) const { return max_abs_diff(adjoint()) <= tol; }

void Operator::apply(std::span<const cd> in, std::span<cd> out, cd alpha, bool accumulate) const {
  if (in.size() != dim() || out.size() != dim()) {
    throw SimulationError(ErrorCode::kInvalidDimension, "vector length does not match operator");
  }
  kernels::active().csr_matvec(view(), alpha, in.data(), out.data(), accumulate);
}

CVector Operator::apply(const CVector& in) const {
  CVector out(in.size());
  apply(std::span<const cd>(in.data(), static_cast<std::size_t>(in.size())),
        std::span<cd>(out.data(), static_cast<std::size_t>(out.size())));
  return out;
}

CMatrix Operator::apply(const CMatrix& in) const {
  if (static_cast<std::size_t>(in.rows()) != dim()) {
    throw SimulationError(ErrorCode::kInvalidDimension, "matrix rows do not match operator");
  }
  CMatrix out(in.rows(), in.cols());
  kernels::active().csr_matmul(view(), 1.0, in.data(), static_cast<std::size_t>(in.cols()),
                               out.data(), false);
  return out;
}

Operator operator+(const Operator& a, const Operator& b) {
  require_same_space(a.space_, b.space_, "operator+");
  auto t = a.triplets();
  auto tb = b.triplets();
  t.insert(t.end(), tb.begin(), tb.end());
  return Operator(a.space_, t);
}

Operator operator-(const Operator& a, const Operator& b) { return a + (-1.0 * b); }

Operator operator*(cd s, const Operator& a) {
  auto t = a.triplets();
  for (auto& e : t) e.value *= s;
  return Operator(a.space_, t);
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_space(a.space_, b.space_, "operator*");
  const std::size_t d = a.dim();
  std::vector<Triplet> t;
  std::vector<cd> acc(d);
  std::vector<char> touched(d, 0);
  std::vector<std::size_t> cols;
  for (std::size_t r = 0; r < d; ++r) {
    cols.clear();
    for (auto k = a.row_ptr_[r]; k < a.row_ptr_[r + 1]; ++k) {
      const auto mid = static_cast<std::size_t>(a.col_idx_[k]);
      for (auto q = b.row_ptr_[mid]; q < b.row_ptr_[mid + 1]; ++q) {
        const auto c = static_cast<std::size_t>(b.col_idx_[q]);
        if (!touched[c]) {
          touched[c] = 1;
          cols.push_back(c);
        }
        acc[c] += a.values_[k] * b.values_[q];
      }
    }
    for (auto c : cols) {
      t.push_back({r, c, acc[c]});
      acc[c] = {};
      touched[c] = 0;
    }
  }
  return Operator(a.space_, t);
}

}  // namespace cascade
