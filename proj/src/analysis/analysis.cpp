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

#include "cascade/analysis/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include <fmt/format.h>

#include "cascade/error.hpp"
#include "cascade/hilbert/algebra.hpp"

namespace cascade {

double factorization_deficit(const DensityMatrix& rho_full) {
  const DensityMatrix field = partial_trace(rho_full, Subsystem::kLaser);
  const double tr = field.trace().real();
  return std::max(0.0, 1.0 - field.purity() / (tr * tr));
}

namespace {

struct Bloch {
  double x, y, z;
};

Bloch bloch_of(const DensityMatrix& rho, double rotate) {
  const cd s = atomic_coherence(rho) * std::exp(cd(0.0, -rotate));
  return {2.0 * s.real(), 2.0 * s.imag(), 2.0 * excitation_probability(rho) - 1.0};
}

}  // namespace

ComparisonReport compare_atom_dynamics(std::span<const MasterSample> full,
                                       std::span<const MasterSample> reduced, double tolerance,
                                       double delta, std::string name) {
  if (full.size() != reduced.size() || full.empty()) {
    throw SimulationError(ErrorCode::kInvalidArgument,
                          fmt::format("grid mismatch: {} vs {} samples", full.size(), reduced.size()));
  }
  ComparisonReport r;
  r.name = std::move(name);
  r.tolerance = tolerance;
  double ss = 0.0;
  for (std::size_t i = 0; i < full.size(); ++i) {
    const double t = full[i].t;
    if (std::abs(t - reduced[i].t) > 1e-9 * std::max(1.0, std::abs(t))) {
      throw SimulationError(ErrorCode::kInvalidArgument,
                            fmt::format("grid mismatch at sample {}: t={} vs {}", i, t, reduced[i].t));
    }
    r.times.push_back(t);
    const double rot_full = full[i].rho.space().kind() == SpaceKind::kQubit ? delta * t : 0.0;
    const double rot_red = reduced[i].rho.space().kind() == SpaceKind::kQubit ? delta * t : 0.0;
    const Bloch a = bloch_of(full[i].rho, rot_full);
    const Bloch b = bloch_of(reduced[i].rho, rot_red);
    const double dpe = std::abs(a.z - b.z) / 2.0;
    r.max_abs_error = std::max(r.max_abs_error, dpe);
    ss += dpe * dpe;
    r.max_bloch_error =
        std::max(r.max_bloch_error, std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) +
                                              (a.z - b.z) * (a.z - b.z)));
  }
  r.rms_error = std::sqrt(ss / double(full.size()));
  r.pass = r.max_abs_error <= tolerance;
  return r;
}

double estimate_rabi_frequency(std::span<const double> times, std::span<const double> pe) {
  if (times.size() != pe.size()) {
    throw SimulationError(ErrorCode::kInvalidArgument, "times and p_e differ in length");
  }
  std::vector<double> extrema;
  for (std::size_t i = 1; i + 1 < pe.size(); ++i) {
    const double l = pe[i - 1], c = pe[i], r = pe[i + 1];
    const bool is_max = c > l && c >= r;
    const bool is_min = c < l && c <= r;
    if (!is_max && !is_min) continue;
    // Vertex of the parabola through the three samples (uniform spacing).
    const double h = times[i + 1] - times[i];
    const double curvature = l - 2.0 * c + r;
    const double offset = curvature != 0.0 ? 0.5 * (l - r) / curvature : 0.0;
    extrema.push_back(times[i] + offset * h);
  }
  if (extrema.size() < 3) {
    throw SimulationError(ErrorCode::kInvalidArgument,
                          fmt::format("series has {} extrema, need >= 3", extrema.size()));
  }
  const double spacing = (extrema.back() - extrema.front()) / double(extrema.size() - 1);
  return std::numbers::pi / spacing;
}

DecayFit decoherence_rate_fit(std::span<const double> times, std::span<const cd> coherence,
                              double max_residual) {
  if (times.size() != coherence.size() || times.size() < 3) {
    throw SimulationError(ErrorCode::kFitFailure, "need >= 3 matching samples for a decay fit");
  }
  const std::size_t n = times.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double m = std::abs(coherence[i]);
    if (!(m > 0.0)) throw SimulationError(ErrorCode::kFitFailure, "coherence vanished inside the window");
    y[i] = std::log(m);
  }
  double tm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    tm += times[i];
    ym += y[i];
  }
  tm /= double(n);
  ym /= double(n);
  double stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    stt += (times[i] - tm) * (times[i] - tm);
    sty += (times[i] - tm) * (y[i] - ym);
  }
  const double slope = sty / stt;
  const double intercept = ym - slope * tm;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (intercept + slope * times[i]);
    ss += e * e;
  }
  DecayFit fit{-slope, std::exp(intercept), std::sqrt(ss / double(n))};
  if (fit.rms_log_residual > max_residual) {
    throw SimulationError(ErrorCode::kFitFailure,
                          fmt::format("log-residual {:.3e} exceeds {:.3e}; not a single exponential",
                                      fit.rms_log_residual, max_residual));
  }
  return fit;
}

const ChannelStatistics* JumpStatistics::find(Channel c) const {
  for (const auto& s : channels) {
    if (s.channel == c) return &s;
  }
  return nullptr;
}

JumpStatistics jump_statistics(std::span<const TrajectoryRecord> records, double t_start,
                               double t_end, std::span<const Channel> channels, std::size_t bins) {
  if (!(t_end > t_start)) throw SimulationError(ErrorCode::kInvalidArgument, "empty time window");
  if (bins == 0) throw SimulationError(ErrorCode::kInvalidArgument, "need at least one bin");
  const double duration = t_end - t_start;
  JumpStatistics out;
  for (Channel c : channels) {
    ChannelStatistics cs;
    cs.channel = c;
    std::vector<double> per_record;
    for (const auto& r : records) {
      double last = t_start;
      std::size_t count = 0;
      for (const auto& e : r.events) {
        if (e.channel != c || e.t < t_start || e.t > t_end) continue;
        cs.waiting_times.push_back(e.t - last);
        last = e.t;
        ++count;
      }
      cs.events += count;
      per_record.push_back(double(count) / duration);
    }
    if (!per_record.empty()) {
      const double n = double(per_record.size());
      double sum = 0.0;
      for (double v : per_record) sum += v;
      cs.rate = sum / n;
      if (per_record.size() > 1) {
        double ss = 0.0;
        for (double v : per_record) ss += (v - cs.rate) * (v - cs.rate);
        cs.std_error = std::sqrt(ss / (n - 1.0) / n);
      }
    }
    const double top = cs.waiting_times.empty()
                           ? duration
                           : *std::max_element(cs.waiting_times.begin(), cs.waiting_times.end());
    cs.histogram.counts.assign(bins, 0);
    for (std::size_t b = 0; b <= bins; ++b) cs.histogram.edges.push_back(top * double(b) / double(bins));
    for (double w : cs.waiting_times) {
      auto b = static_cast<std::size_t>(w / top * double(bins));
      ++cs.histogram.counts[std::min(b, bins - 1)];
    }
    out.channels.push_back(std::move(cs));
  }
  return out;
}

nlohmann::json to_json(const ComparisonReport& report) {
  return {{"name", report.name},
          {"max_abs_error", report.max_abs_error},
          {"rms_error", report.rms_error},
          {"max_bloch_error", report.max_bloch_error},
          {"tolerance", report.tolerance},
          {"pass", report.pass},
          {"n_times", report.times.size()}};
}

nlohmann::json to_json(const DecayFit& fit) {
  return {{"rate", fit.rate}, {"amplitude", fit.amplitude}, {"rms_log_residual", fit.rms_log_residual}};
}

void write_histogram_csv(std::ostream& out, const JumpStatistics& stats) {
  out << "channel,bin_lo,bin_hi,count\r\n";
  for (const auto& cs : stats.channels) {
    for (std::size_t b = 0; b < cs.histogram.counts.size(); ++b) {
      out << fmt::format("{},{:.17e},{:.17e},{}\r\n", to_string(cs.channel), cs.histogram.edges[b],
                         cs.histogram.edges[b + 1], cs.histogram.counts[b]);
    }
  }
}

}  // namespace cascade
