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

#include <complex>
#include <cstddef>
#include <string>

#include <Eigen/Dense>

namespace cascade {

using cd = std::complex<double>;
// Row-major so that rows are contiguous for the sparse-times-dense kernels.
using CMatrix = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVector = Eigen::VectorXcd;

enum class SpaceKind { kFock, kQubit, kComposite };
enum class Subsystem { kLaser, kAtom };

// Hilbert space tag. Composite spaces are always laser (Fock, index major)
// tensor atom (qubit, basis |->, |+>), so composite index = n * 2 + s.
class SpaceSpec {
 public:
  static SpaceSpec fock(std::size_t n_trunc);
  static SpaceSpec qubit() { return SpaceSpec(SpaceKind::kQubit, 0); }
  static SpaceSpec composite(std::size_t n_trunc);

  SpaceKind kind() const noexcept { return kind_; }
  // Fock truncation for Fock and composite spaces, 0 for a qubit.
  std::size_t fock_dim() const noexcept { return fock_dim_; }
  std::size_t dim() const noexcept;

  SpaceSpec laser() const;
  SpaceSpec atom() const;

  std::string to_string() const;

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;

 private:
  SpaceSpec(SpaceKind kind, std::size_t fock_dim) : kind_(kind), fock_dim_(fock_dim) {}

  SpaceKind kind_;
  std::size_t fock_dim_;
};

inline constexpr std::size_t kAtomDim = 2;
inline constexpr std::size_t kGround = 0;   // |->
inline constexpr std::size_t kExcited = 1;  // |+>

void require_same_space(const SpaceSpec& a, const SpaceSpec& b, const char* where);

}  // namespace cascade
