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

#include <optional>
#include <string>

#include "cascade/hilbert/operator.hpp"
#include "cascade/hilbert/state.hpp"

namespace cascade {

Operator fock_annihilation(std::size_t n_trunc);
Operator fock_number(std::size_t n_trunc);
// |-><+| in the basis (|->, |+>).
Operator qubit_lowering();
Operator qubit_raising();

// Smallest truncation keeping the Poisson tail of |alpha> below ~1e-9:
// ceil(|alpha|^2 + 6|alpha| + 10).
std::size_t recommended_truncation(cd alpha);

struct CoherentState {
  StateVector state;            // renormalized over the truncated basis
  double tail_weight = 0.0;     // discarded Poisson weight sum_{n >= N} P(n)
  double raw_norm2 = 0.0;       // norm^2 before renormalization, 1 - tail_weight
  std::optional<std::string> warning;  // set when N < recommended_truncation(alpha)
};

CoherentState coherent_state(cd alpha, std::size_t n_trunc);

// Kronecker product, laser index major. Accepts (Fock, Qubit) operators or
// states; anything else is a space-mismatch error.
Operator tensor(const Operator& laser, const Operator& atom);
StateVector tensor(const StateVector& laser, const StateVector& atom);

// A (x) I and I (x) B on the composite space.
Operator on_laser(const Operator& laser);
Operator on_atom(const Operator& atom, std::size_t n_trunc);

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);

// Von Neumann entropy (nats) of either reduced state, from the Schmidt
// coefficients of the laser x atom amplitude matrix.
double schmidt_entropy(const StateVector& psi);
// Independent route through a Hermitian eigensolver.
double von_neumann_entropy(const DensityMatrix& rho);

cd expectation(const Operator& a, const StateVector& psi);
cd expectation(const Operator& a, const DensityMatrix& rho);

}  // namespace cascade
