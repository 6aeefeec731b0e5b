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

#include "cascade/trajectory/trajectory.hpp"

namespace cascade {

struct ChannelRate {
  Channel channel;
  double rate;        // events per unit time, averaged over trajectories
  double std_error;
};

struct EnsembleStats {
  std::vector<double> times;
  std::vector<double> mean_pe;
  std::vector<double> stderr_pe;
  std::vector<double> mean_entropy;
  std::vector<ChannelRate> jump_rates;
  std::size_t n_traj = 0;
  // Filled when EnsembleOptions::keep_records is set, ordered by index.
  std::vector<TrajectoryRecord> records;
};

struct EnsembleOptions {
  std::size_t workers = 0;  // 0 = std::thread::hardware_concurrency()
  bool keep_records = false;
  TrajectoryOptions trajectory;
};

// Trajectory i uses seed trajectory_seed(master_seed, i). Statistics are
// reduced in index order, so results do not depend on the worker count.
EnsembleStats run_ensemble(const Generator& gen, const StateVector& psi0, const TimeGrid& grid,
                           std::size_t n_traj, std::uint64_t master_seed,
                           const EnsembleOptions& options = {});

// Statistics of records sampled on the same grid; `duration` converts event
// counts to rates. Channels listed in `channels` always appear in jump_rates.
EnsembleStats aggregate(std::span<const TrajectoryRecord> records, double duration,
                        std::span<const Channel> channels);

}  // namespace cascade
