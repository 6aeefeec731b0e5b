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

#include "cascade/analysis/observables.hpp"

#include <cmath>

#include "cascade/error.hpp"
#include "cascade/hilbert/algebra.hpp"

namespace cascade {

namespace {

void require_atom(const SpaceSpec& s, const char* where) {
  if (s.kind() == SpaceKind::kFock) {
    throw SimulationError(ErrorCode::kSpaceMismatch, std::string(where) + " needs an atom");
  }
}

}  // namespace

double excitation_probability(const StateVector& psi) {
  require_atom(psi.space(), "excitation_probability");
  const auto& c = psi.amplitudes();
  double excited = 0.0;
  for (Eigen::Index i = Eigen::Index(kExcited); i < c.size(); i += Eigen::Index(kAtomDim)) {
    excited += std::norm(c(i));
  }
  return excited / psi.norm2();
}

double excitation_probability(const DensityMatrix& rho) {
  require_atom(rho.space(), "excitation_probability");
  const CMatrix& m = rho.matrix();
  double excited = 0.0;
  for (Eigen::Index i = Eigen::Index(kExcited); i < m.rows(); i += Eigen::Index(kAtomDim)) {
    excited += m(i, i).real();
  }
  return excited / rho.trace().real();
}

cd atomic_coherence(const StateVector& psi) {
  require_atom(psi.space(), "atomic_coherence");
  const auto& c = psi.amplitudes();
  cd acc{};
  // <sigma_-> = sum_n conj(c_{n,-}) c_{n,+}
  for (Eigen::Index i = 0; i < c.size(); i += Eigen::Index(kAtomDim)) {
    acc += std::conj(c(i)) * c(i + 1);
  }
  return acc / psi.norm2();
}

cd atomic_coherence(const DensityMatrix& rho) {
  require_atom(rho.space(), "atomic_coherence");
  const CMatrix& m = rho.matrix();
  cd acc{};
  // tr(sigma_- rho) = sum_n rho_{(n,+),(n,-)}
  for (Eigen::Index i = 0; i < m.rows(); i += Eigen::Index(kAtomDim)) acc += m(i + 1, i);
  return acc / rho.trace().real();
}

cd field_amplitude(const DensityMatrix& rho) {
  switch (rho.space().kind()) {
    case SpaceKind::kFock: return expectation(fock_annihilation(rho.space().fock_dim()), rho);
    case SpaceKind::kComposite:
      return expectation(on_laser(fock_annihilation(rho.space().fock_dim())), rho);
    case SpaceKind::kQubit: break;
  }
  throw SimulationError(ErrorCode::kSpaceMismatch, "field_amplitude needs a laser mode");
}

}  // namespace cascade
