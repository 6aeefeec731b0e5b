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

#include <span>

#include "cascade/hilbert/space.hpp"

namespace cascade {

inline constexpr double kNormTolerance = 1e-10;

// Pure state, possibly unnormalized (conditional trajectory states between
// renormalizations). The normalized flag is a checked claim.
class StateVector {
 public:
  StateVector(SpaceSpec space, CVector amplitudes, bool normalized);

  static StateVector basis(SpaceSpec space, std::size_t index);
  // |n> on a Fock space or |n, s> on a composite space.
  static StateVector composite_basis(std::size_t n_trunc, std::size_t n, std::size_t s);

  const SpaceSpec& space() const noexcept { return space_; }
  const CVector& amplitudes() const noexcept { return amplitudes_; }
  std::span<const cd> span() const noexcept {
    return {amplitudes_.data(), static_cast<std::size_t>(amplitudes_.size())};
  }
  bool is_normalized() const noexcept { return normalized_; }

  double norm2() const;
  StateVector normalized() const;

 private:
  SpaceSpec space_;
  CVector amplitudes_;
  bool normalized_;
};

struct DensityInvariants {
  double hermiticity_error = 0.0;  // max |rho - rho^dagger|
  double trace_error = 0.0;        // |tr rho - 1|
  double min_eigenvalue = 0.0;

  bool ok(double herm_tol = 1e-10, double trace_tol = 1e-8, double eig_tol = 1e-8) const {
    return hermiticity_error <= herm_tol && trace_error <= trace_tol && min_eigenvalue >= -eig_tol;
  }
};

class DensityMatrix {
 public:
  DensityMatrix(SpaceSpec space, CMatrix matrix);
  static DensityMatrix from_pure(const StateVector& psi);

  const SpaceSpec& space() const noexcept { return space_; }
  const CMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return space_.dim(); }

  cd trace() const { return matrix_.trace(); }
  double purity() const;
  DensityInvariants invariants() const;
  // Throws SimulationError when any invariant is outside tolerance.
  void validate() const;

 private:
  SpaceSpec space_;
  CMatrix matrix_;
};

}  // namespace cascade
