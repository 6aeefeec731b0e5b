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

#include "cascade/hilbert/state.hpp"

#include <cmath>

#include <fmt/format.h>

#include "cascade/error.hpp"

namespace cascade {

StateVector::StateVector(SpaceSpec space, CVector amplitudes, bool normalized)
    : space_(space), amplitudes_(std::move(amplitudes)), normalized_(normalized) {
  if (static_cast<std::size_t>(amplitudes_.size()) != space_.dim()) {
    throw SimulationError(ErrorCode::kInvalidDimension,
                          fmt::format("{} amplitudes on {}", amplitudes_.size(), space_.to_string()));
  }
  if (!amplitudes_.allFinite()) {
    throw SimulationError(ErrorCode::kInvalidArgument, "state amplitudes must be finite");
  }
  const double n2 = norm2();
  if (!(n2 > 0.0)) throw SimulationError(ErrorCode::kInvalidArgument, "state has zero norm");
  if (normalized_ && std::abs(n2 - 1.0) > kNormTolerance) {
    throw SimulationError(ErrorCode::kNotNormalized,
                          fmt::format("flagged normalized but |psi|^2 = {:.17g}", n2));
  }
}

StateVector StateVector::basis(SpaceSpec space, std::size_t index) {
  if (index >= space.dim()) {
    throw SimulationError(ErrorCode::kInvalidDimension, "basis index outside space");
  }
  CVector v = CVector::Zero(static_cast<Eigen::Index>(space.dim()));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return {space, std::move(v), true};
}

StateVector StateVector::composite_basis(std::size_t n_trunc, std::size_t n, std::size_t s) {
  return basis(SpaceSpec::composite(n_trunc), n * kAtomDim + s);
}

double StateVector::norm2() const { return amplitudes_.squaredNorm(); }

StateVector StateVector::normalized() const {
  return {space_, amplitudes_ / std::sqrt(norm2()), true};
}

DensityMatrix::DensityMatrix(SpaceSpec space, CMatrix matrix)
    : space_(space), matrix_(std::move(matrix)) {
  const auto d = static_cast<Eigen::Index>(space_.dim());
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw SimulationError(ErrorCode::kInvalidDimension,
                          fmt::format("{}x{} density matrix on {}", matrix_.rows(), matrix_.cols(),
                                      space_.to_string()));
  }
  if (!matrix_.allFinite()) {
    throw SimulationError(ErrorCode::kInvalidArgument, "density matrix entries must be finite");
  }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  const CVector v = psi.amplitudes() / std::sqrt(psi.norm2());
  return {psi.space(), v * v.adjoint()};
}

double DensityMatrix::purity() const {
  // tr(rho^2) = sum_ij rho_ij rho_ji = sum_ij |rho_ij|^2 for Hermitian rho.
  return (matrix_.array() * matrix_.transpose().array()).sum().real();
}

DensityInvariants DensityMatrix::invariants() const {
  DensityInvariants inv;
  inv.hermiticity_error = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  inv.trace_error = std::abs(trace() - 1.0);
  const Eigen::MatrixXcd herm = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
  inv.min_eigenvalue = solver.eigenvalues().minCoeff();
  return inv;
}

void DensityMatrix::validate() const {
  const auto inv = invariants();
  if (inv.min_eigenvalue < -1e-8) {
    throw SimulationError(ErrorCode::kPositivityViolation,
                          fmt::format("minimum eigenvalue {:.3e}", inv.min_eigenvalue));
  }
  if (!inv.ok()) {
    throw SimulationError(ErrorCode::kInvalidArgument,
                          fmt::format("hermiticity error {:.3e}, trace error {:.3e}",
                                      inv.hermiticity_error, inv.trace_error));
  }
}

}  // namespace cascade
