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
#include <vector>

#include "cascade/generators/generator.hpp"
#include "cascade/hilbert/state.hpp"

namespace cascade {

// RK4 stage times for the step [t, t + dt]. The end stages sit a relative
// 1e-12 inside the step, so a drive edge lying on the grid is seen by exactly
// one side of it.
struct StageTimes {
  double start, mid, end;
};
inline StageTimes stage_times(double t, double dt) {
  const double eps = dt * 1e-12;
  return {t + eps, t + 0.5 * dt, t + dt - eps};
}

struct TimeGrid {
  double t_start = 0.0;
  double t_end = 1.0;
  double dt = 0.005;
  std::size_t sample_stride = 1;

  void validate() const;
  // round((t_end - t_start) / dt)
  std::size_t steps() const;
  double time(std::size_t step) const { return t_start + double(step) * dt; }
  // Steps 0, stride, 2 stride, ... <= steps().
  std::vector<double> sample_times() const;
  std::size_t sample_count() const { return steps() / sample_stride + 1; }
};

// d rho / dt = -i [H(t), rho] + sum_c D[J_c] rho for Hermitian rho, evaluated
// channel-wise as  -i H_B rho + (-i H_B rho)^dagger + sum_c J_c (J_c rho)^dagger
// with H_B = H - (i/2) sum_c J_c^dagger J_c.
CMatrix lindblad_rhs(const Generator& gen, const DensityMatrix& rho, double t);

struct IntegrateOptions {
  // Abort when the minimum eigenvalue at a sample drops below -positivity_tol.
  double positivity_tol = 1e-6;
  bool check_positivity = true;
};

struct MasterSample {
  double t;
  DensityMatrix rho;
};

using MasterObserver = std::function<void(double t, const DensityMatrix& rho)>;

// Classical RK4 with fixed step. After every step rho is Hermitized and its
// trace renormalized. The observer sees every sample_stride-th state,
// starting with rho0.
void integrate(const Generator& gen, const DensityMatrix& rho0, const TimeGrid& grid,
               const MasterObserver& observer, const IntegrateOptions& options = {});
std::vector<MasterSample> integrate(const Generator& gen, const DensityMatrix& rho0,
                                    const TimeGrid& grid, const IntegrateOptions& options = {});

struct SteadyStateOptions {
  double dt = 0.005;
  double horizon = 1e4;  // give up after this much simulated time
  std::size_t check_every = 20;
};

// Integrates from the lowest basis state until max |d rho/dt| < tol.
DensityMatrix steady_state(const Generator& gen, double tol, const SteadyStateOptions& options = {});

}  // namespace cascade
