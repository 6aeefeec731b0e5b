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

#include <cstdint>
#include <functional>
#include <vector>

#include "cascade/generators/generator.hpp"
#include "cascade/hilbert/state.hpp"
#include "cascade/master/master.hpp"

namespace cascade {

struct JumpEvent {
  double t;  // end of the step in which the jump fired
  Channel channel;
  // Conditional excitation probability just before and after the jump.
  double pe_before = 0.0;
  double pe_after = 0.0;
  // Conditional Schmidt entropy after the jump (0 off composite spaces).
  double entropy_after = 0.0;
};

struct TrajectorySample {
  double t;
  double pe;
  double entropy;  // nats; 0 off composite spaces
  // Squared norm of the unnormalized state produced by the last step
  // (|J_c psi|^2 after a jump), before renormalization; 1 at the first sample.
  double norm2;
};

struct TrajectoryRecord {
  std::uint64_t seed = 0;
  std::vector<JumpEvent> events;
  std::vector<TrajectorySample> samples;
};

// H_B(t) = H(t) - (i/2) sum_c J_c^dagger J_c
Operator nonhermitian_hamiltonian(const Generator& gen, double t);

inline constexpr double kMaxStepRate = 0.05;
inline constexpr double kMaxJumpProbability = 0.1;

// One RK4 step of i d|psi>/dt = H_B |psi>; the result is not renormalized.
// Throws kStepSize when the norm decay rate times dt exceeds max_rate or when
// the norm grows by more than 1e-12 (relative).
StateVector nojump_step(const StateVector& psi, const Operator& h_b, double dt,
                        double max_rate = kMaxStepRate);
// Same, with H_B(t) re-evaluated at the RK stages.
StateVector nojump_step(const StateVector& psi, const Generator& gen, double t, double dt,
                        double max_rate = kMaxStepRate);

struct JumpProbability {
  Channel channel;
  double probability;
};

// p_c = <psi| J_c^dagger J_c |psi> dt on a normalized state; throws kStepSize
// when sum_c p_c > max_total.
std::vector<JumpProbability> jump_probabilities(const StateVector& psi,
                                                const std::vector<JumpChannel>& channels, double dt,
                                                double max_total = kMaxJumpProbability);

// J_c |psi> renormalized; throws kImpossibleJump if the image vanishes.
StateVector apply_jump(const StateVector& psi, const JumpChannel& channel);

enum class JumpScheme {
  // Per step: jump with probability sum_c p_c, else evolve with H_B.
  kBernoulli,
  // Evolve with H_B until |psi|^2 falls below a uniform draw, then jump.
  kWaitingTime,
};

using StateObserver = std::function<void(double t, const StateVector& psi)>;

struct TrajectoryOptions {
  JumpScheme scheme = JumpScheme::kBernoulli;
  double max_step_rate = kMaxStepRate;
  double max_jump_probability = kMaxJumpProbability;
  bool record_entropy = true;
  // Called with the normalized conditional state at every sample time.
  StateObserver observer;
};

// Deterministic in (gen, psi0, grid, seed, options.scheme).
TrajectoryRecord run_trajectory(const Generator& gen, const StateVector& psi0, const TimeGrid& grid,
                                std::uint64_t seed, const TrajectoryOptions& options = {});

}  // namespace cascade
