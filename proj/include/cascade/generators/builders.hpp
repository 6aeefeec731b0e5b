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

#include <functional>

#include "cascade/generators/generator.hpp"
#include "cascade/generators/model.hpp"
#include "cascade/hilbert/state.hpp"

namespace cascade {

using AlphaFunction = std::function<cd(double)>;

// Laser (x) atom cascaded model:
//   H = delta s+s- + i kL (lambda a+ - lambda* a) + i sqrt(kL kA) (a+ s- - a s+)
//   J_F = sqrt(2 kL) a + sqrt(2 kA) s-,   J_S = sqrt(2 kA') s-
Generator build_cascaded(const ModelParams& params, std::size_t n_trunc);

// Laser alone: H = i kL (lambda a+ - lambda* a), J_L = sqrt(2 kL) a.
Generator build_laser(const ModelParams& params, std::size_t n_trunc);

// Atom driven by the classical amplitude alpha(t):
//   H_eff = i sqrt(4 kL kA) (alpha* s- e^{-i delta t} - alpha s+ e^{i delta t}),
//   J_A = sqrt(gamma) s-.
Generator build_reduced_atom(const ModelParams& params, AlphaFunction alpha);
Generator build_reduced_atom(const ModelParams& params, cd constant_alpha);

// Mean-field amplitude of the driven cavity,
//   alpha(t) = alpha0 e^{-kL t} + kL int_0^t e^{kL (t' - t)} lambda(t') dt',
// in closed form for constant and rectangular drives and by adaptive
// Gauss-Kronrod quadrature (relative tolerance 1e-10) for Gaussian pulses.
// A Fock initial field contributes alpha0 = 0.
cd alpha_of_t(const ModelParams& params, double t);

StateVector initial_field_state(const ModelParams& params, std::size_t n_trunc);

// Truncation for the model's initial field and drive (recommended_truncation
// of the largest amplitude the field can reach, or n + 10 for Fock states).
std::size_t default_truncation(const ModelParams& params);

}  // namespace cascade
