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

#include "cascade/hilbert/state.hpp"

namespace cascade {

// <sigma_+ sigma_-> on a qubit or the atom factor of a composite space.
double excitation_probability(const StateVector& psi);
double excitation_probability(const DensityMatrix& rho);
// <sigma_-> of the atom.
cd atomic_coherence(const StateVector& psi);
cd atomic_coherence(const DensityMatrix& rho);
// <a> of the laser mode (Fock or composite space).
cd field_amplitude(const DensityMatrix& rho);

}  // namespace cascade
