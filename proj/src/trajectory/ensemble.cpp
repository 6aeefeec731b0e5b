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

#include "cascade/trajectory/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "cascade/error.hpp"
#include "cascade/trajectory/rng.hpp"

namespace cascade {

namespace {

struct MeanError {
  double mean = 0.0;
  double std_error = 0.0;
};

// Two-pass mean and standard error of the mean, summed in index order.
template <typename Get>
MeanError mean_and_error(std::size_t n, Get get) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += get(i);
  const double mean = sum / double(n);
  if (n < 2) return {mean, 0.0};
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = get(i) - mean;
    ss += d * d;
  }
  return {mean, std::sqrt(ss / double(n - 1) / double(n))};
}

}  // namespace

EnsembleStats aggregate(std::span<const TrajectoryRecord> records, double duration,
                        std::span<const Channel> channels) {
  EnsembleStats stats;
  stats.n_traj = records.size();
  if (records.empty()) return stats;
  const std::size_t n_samples = records.front().samples.size();
  for (const auto& r : records) {
    if (r.samples.size() != n_samples) {
      throw SimulationError(ErrorCode::kInvalidArgument, "records sampled on different grids");
    }
  }
  const std::size_t n = records.size();
  for (std::size_t s = 0; s < n_samples; ++s) {
    stats.times.push_back(records.front().samples[s].t);
    const auto pe = mean_and_error(n, [&](std::size_t i) { return records[i].samples[s].pe; });
    stats.mean_pe.push_back(pe.mean);
    stats.stderr_pe.push_back(pe.std_error);
    stats.mean_entropy.push_back(
        mean_and_error(n, [&](std::size_t i) { return records[i].samples[s].entropy; }).mean);
  }
  for (Channel c : channels) {
    const auto rate = mean_and_error(n, [&](std::size_t i) {
      const auto count = std::count_if(records[i].events.begin(), records[i].events.end(),
                                       [c](const JumpEvent& e) { return e.channel == c; });
      return double(count) / duration;
    });
    stats.jump_rates.push_back({c, rate.mean, rate.std_error});
  }
  return stats;
}

EnsembleStats run_ensemble(const Generator& gen, const StateVector& psi0, const TimeGrid& grid,
                           std::size_t n_traj, std::uint64_t master_seed,
                           const EnsembleOptions& options) {
  if (n_traj == 0) throw SimulationError(ErrorCode::kInvalidArgument, "n_traj must be >= 1");
  grid.validate();

  std::vector<TrajectoryRecord> records(n_traj);
  std::size_t workers = options.workers ? options.workers : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, n_traj);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  const auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_traj || failed.load()) return;
      try {
        records[i] = run_trajectory(gen, psi0, grid, trajectory_seed(master_seed, i), options.trajectory);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);

  std::vector<Channel> labels;
  for (const auto& c : gen.channels()) labels.push_back(c.label);
  EnsembleStats stats =
      aggregate(records, grid.time(grid.steps()) - grid.t_start, labels);
  if (options.keep_records) stats.records = std::move(records);
  return stats;
}

}  // namespace cascade
