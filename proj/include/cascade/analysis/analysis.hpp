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

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "cascade/analysis/observables.hpp"
#include "cascade/master/master.hpp"
#include "cascade/trajectory/trajectory.hpp"

namespace cascade {

struct ComparisonReport {
  std::string name;
  double max_abs_error = 0.0;    // max_t |p_e^a - p_e^b|
  double rms_error = 0.0;
  double max_bloch_error = 0.0;  // max_t |r^a - r^b| on the Bloch vector
  double tolerance = 0.0;
  bool pass = false;             // max_abs_error <= tolerance
  std::vector<double> times;
};

// 1 - tr[(tr_A rho)^2]; zero iff the field marginal is pure.
double factorization_deficit(const DensityMatrix& rho_full);

// Compares atom marginals sampled on the same grid. `reduced` may come from
// the reduced-atom model, whose coherences live in the frame rotating at the
// atomic frequency; they are rotated by e^{-i delta t} into the laser frame.
ComparisonReport compare_atom_dynamics(std::span<const MasterSample> full,
                                       std::span<const MasterSample> reduced, double tolerance,
                                       double delta = 0.0, std::string name = "atom_dynamics");

// pi / (mean spacing of successive extrema of p_e(t)); extrema are located
// with a parabolic fit through the neighbouring samples.
double estimate_rabi_frequency(std::span<const double> times, std::span<const double> pe);

struct DecayFit {
  double rate = 0.0;
  double amplitude = 0.0;
  double rms_log_residual = 0.0;
};

// Least-squares fit of log|c(t)| = log A - rate t over the given window.
// Throws kFitFailure when the RMS residual in log space exceeds max_residual.
DecayFit decoherence_rate_fit(std::span<const double> times, std::span<const cd> coherence,
                              double max_residual = 1e-3);

struct Histogram {
  std::vector<double> edges;  // bins + 1 entries
  std::vector<std::size_t> counts;
};

struct ChannelStatistics {
  Channel channel;
  std::size_t events = 0;
  double rate = 0.0;        // per unit time, mean over records
  double std_error = 0.0;
  std::vector<double> waiting_times;  // from t_start or the previous event on the channel
  Histogram histogram;
};

struct JumpStatistics {
  std::vector<ChannelStatistics> channels;
  const ChannelStatistics* find(Channel c) const;
};

JumpStatistics jump_statistics(std::span<const TrajectoryRecord> records, double t_start,
                               double t_end, std::span<const Channel> channels,
                               std::size_t bins = 20);

nlohmann::json to_json(const ComparisonReport& report);
nlohmann::json to_json(const DecayFit& fit);
// channel,bin_lo,bin_hi,count
void write_histogram_csv(std::ostream& out, const JumpStatistics& stats);

}  // namespace cascade
