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

#include <random>

#include "cascade/hilbert/algebra.hpp"

namespace cascade::testing {

inline cd random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return {n(rng), n(rng)};
}

inline CMatrix random_matrix(std::size_t d, std::mt19937_64& rng) {
  CMatrix m(d, d);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = random_complex(rng);
  return m;
}

// Random density matrix M M^dagger / tr.
inline DensityMatrix random_density(SpaceSpec space, std::mt19937_64& rng) {
  const CMatrix m = random_matrix(space.dim(), rng);
  CMatrix rho = m * m.adjoint();
  rho /= rho.trace();
  return {space, rho};
}

inline CMatrix random_hermitian(std::size_t d, std::mt19937_64& rng) {
  const CMatrix m = random_matrix(d, rng);
  return 0.5 * (m + m.adjoint());
}

inline StateVector random_state(SpaceSpec space, std::mt19937_64& rng) {
  CVector v(static_cast<Eigen::Index>(space.dim()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = random_complex(rng);
  return {space, v / v.norm(), true};
}

inline Operator random_sparse(SpaceSpec space, double fill, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Triplet> t;
  for (std::size_t r = 0; r < space.dim(); ++r) {
    for (std::size_t c = 0; c < space.dim(); ++c) {
      if (u(rng) < fill) t.push_back({r, c, random_complex(rng)});
    }
  }
  return Operator(space, t);
}

}  // namespace cascade::testing
