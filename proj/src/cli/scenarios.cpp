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

#include "cascade/cli/scenarios.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include <Eigen/SVD>
#include <fmt/format.h>

#include "cascade/cli/output.hpp"
#include "cascade/error.hpp"
#include "cascade/hilbert/algebra.hpp"
#include "cascade/trajectory/record_io.hpp"

namespace cascade::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
namespace fs = std::filesystem;

double binary_entropy(double p) {
  double s = 0.0;
  for (double q : {p, 1.0 - p}) {
    if (q > 0.0) s -= q * std::log(q);
  }
  return s;
}

std::vector<double> scaled_times(std::span<const MasterSample> samples, double gamma) {
  std::vector<double> t;
  t.reserve(samples.size());
  for (const auto& s : samples) t.push_back(s.t * gamma);
  return t;
}

std::vector<double> pe_of(std::span<const MasterSample> samples) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(excitation_probability(s.rho));
  return out;
}

std::vector<double> nan_column(std::size_t n) { return std::vector<double>(n, kNaN); }

struct Check {
  nlohmann::json report = nlohmann::json::object();
  std::vector<std::string> failed;
  void add(const std::string& name, bool pass) {
    report[name] = pass;
    if (!pass) failed.push_back(name);
  }
};

nlohmann::json rates_json(const std::vector<ChannelRate>& rates, double gamma) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rates) {
    out.push_back({{"channel", to_string(r.channel)}, {"rate", r.rate / gamma}, {"std_error", r.std_error / gamma}});
  }
  return out;
}

nlohmann::json model_json(const RunConfig& c, const ModelParams& p, std::size_t n_trunc) {
  nlohmann::json j{{"gamma", c.gamma},         {"kappa_L", p.kappa_L}, {"kappa_A", p.kappa_A},
                   {"kappa_A_prime", p.kappa_A_prime}, {"delta", p.delta}, {"rabi", c.rabi * c.gamma},
                   {"n_trunc", n_trunc}};
  if (const auto* f = std::get_if<CoherentField>(&p.initial_field)) {
    j["alpha0"] = {f->alpha0.real(), f->alpha0.imag()};
    j["mean_photon_number"] = std::norm(f->alpha0);
  } else {
    j["fock_n"] = std::get<FockField>(p.initial_field).n;
  }
  const cd peak = std::visit(
      [](const auto& d) -> cd {
        if constexpr (requires { d.peak; }) {
          return d.peak;
        } else {
          return d.lambda;
        }
      },
      p.drive.shape());
  j["drive_amplitude"] = {peak.real(), peak.imag()};
  return j;
}

// Records as written to events.jsonl: samples only for the first `show`.
void write_events(const fs::path& path, const std::vector<TrajectoryRecord>& records, std::size_t show) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SimulationError(ErrorCode::kConfig, fmt::format("cannot write {}", path.string()));
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (i < show) {
      out << to_jsonl(records[i]) << '\n';
    } else {
      TrajectoryRecord r{records[i].seed, records[i].events, {}};
      out << to_jsonl(r) << '\n';
    }
  }
}

void add_trajectory_series(PlotData& plot, const std::vector<TrajectoryRecord>& records, std::size_t show,
                           double gamma) {
  for (std::size_t i = 0; i < std::min(show, records.size()); ++i) {
    Series pe{fmt::format("p_e_traj_{}", i), {}}, s{fmt::format("entropy_traj_{}", i), {}};
    for (const auto& smp : records[i].samples) {
      pe.values.push_back(smp.pe);
      s.values.push_back(smp.entropy);
    }
    plot.series.push_back(std::move(pe));
    plot.series.push_back(std::move(s));
    for (const auto& e : records[i].events) plot.markers.push_back({e.t * gamma, e.channel, i});
  }
}

// Columns shared by every timeseries.csv.
std::vector<Series> base_columns(std::size_t n) {
  return {{"p_e_traj", nan_column(n)}, {"p_e_master", nan_column(n)}, {"entropy", nan_column(n)},
          {"stderr", nan_column(n)}};
}

void fill_from_ensemble(std::vector<Series>& cols, const EnsembleStats& stats) {
  const auto& first = stats.records.front();
  for (std::size_t i = 0; i < first.samples.size() && i < cols[0].values.size(); ++i) {
    cols[0].values[i] = first.samples[i].pe;
    cols[2].values[i] = first.samples[i].entropy;
    cols[3].values[i] = stats.stderr_pe[i];
  }
}

ScenarioOutcome finish(const RunConfig& c, nlohmann::json report, Check check) {
  report["scenario"] = c.scenario;
  report["checks"] = check.report;
  report["passed"] = check.failed.empty();
  write_json(fs::path(c.out_dir) / "report.json", report);
  write_manifest(c.out_dir, c);
  return {std::move(report), std::move(check.failed)};
}

ScenarioOutcome run_figure(const RunConfig& c) {
  const auto p = model_params(c);
  const std::size_t n = truncation(c, p);
  const auto mc = compare_full_reduced(c, c.dt);
  auto ens = run_ensemble_check(c, mc.full, c.n_traj);
  const auto& stats = ens.stats;

  const auto times = scaled_times(mc.full, c.gamma);
  auto cols = base_columns(times.size());
  cols[1].values = pe_of(mc.full);
  fill_from_ensemble(cols, stats);
  cols.push_back({"p_e_mean", stats.mean_pe});
  cols.push_back({"p_e_reduced", pe_of(mc.reduced)});
  cols.push_back({"factorization_deficit", mc.deficit});
  write_table(fs::path(c.out_dir) / "timeseries.csv", times, cols);
  write_events(fs::path(c.out_dir) / "events.jsonl", stats.records, c.show);

  PlotData plot{times, {{"p_e_master", cols[1].values}, {"p_e_reduced", cols[5].values}, {"p_e_mean", stats.mean_pe}}, {}};
  add_trajectory_series(plot, stats.records, c.show, c.gamma);
  emit_plotdata(c.out_dir, plot);

  Check check;
  check.add("equivalence", mc.report.pass);
  check.add("factorization", mc.max_deficit <= c.tol_factorization);
  check.add("ensemble_within_3se", ens.fraction_within >= c.min_ensemble_fraction);
  check.add("side_jumps_ground", ens.side_jumps_ground);

  nlohmann::json report;
  report["model"] = model_json(c, p, n);
  report["comparisons"] = nlohmann::json::array({to_json(mc.report)});
  report["factorization"] = {{"max_deficit", mc.max_deficit}, {"tolerance", c.tol_factorization}};
  report["ensemble"] = {{"n_traj", stats.n_traj},
                        {"fraction_within_3se", ens.fraction_within},
                        {"rms_deviation", ens.rms_deviation},
                        {"jump_rates", rates_json(stats.jump_rates, c.gamma)},
                        {"side_jumps_ground", ens.side_jumps_ground},
                        {"forward_raises_pe", ens.forward_raises_pe}};
  return finish(c, std::move(report), std::move(check));
}

ScenarioOutcome run_factorization(const RunConfig& c) {
  const auto p = model_params(c);
  const std::size_t n = truncation(c, p);
  const auto mc = compare_full_reduced(c, c.dt);
  const auto times = scaled_times(mc.full, c.gamma);
  auto cols = base_columns(times.size());
  cols[1].values = pe_of(mc.full);
  cols.push_back({"factorization_deficit", mc.deficit});
  std::vector<double> purity;
  for (double d : mc.deficit) purity.push_back(1.0 - d);
  cols.push_back({"field_purity", purity});
  write_table(fs::path(c.out_dir) / "timeseries.csv", times, cols);
  write_events(fs::path(c.out_dir) / "events.jsonl", {}, 0);
  emit_plotdata(c.out_dir, PlotData{times, {{"p_e_master", cols[1].values}, {"factorization_deficit", mc.deficit}}, {}});

  Check check;
  check.add("factorization", mc.max_deficit <= c.tol_factorization);
  nlohmann::json report;
  report["model"] = model_json(c, p, n);
  report["comparisons"] = nlohmann::json::array({to_json(mc.report)});
  report["factorization"] = {{"max_deficit", mc.max_deficit},
                             {"min_purity", 1.0 - mc.max_deficit},
                             {"tolerance", c.tol_factorization}};
  return finish(c, std::move(report), std::move(check));
}

ScenarioOutcome run_fock(const RunConfig& c) {
  const auto p = model_params(c);
  const std::size_t n = truncation(c, p);
  const auto cases = fock_jump_cases(c);
  double worst = 0.0, worst_svd = 0.0;
  nlohmann::json table = nlohmann::json::array();
  for (const auto& fc : cases) {
    worst = std::max(worst, std::abs(fc.entropy - fc.expected));
    worst_svd = std::max(worst_svd, std::abs(fc.entropy - fc.svd_entropy));
    table.push_back({{"n", fc.n},
                     {"kappa_L", fc.kappa_L},
                     {"kappa_A", fc.kappa_A},
                     {"entropy", fc.entropy},
                     {"binary_entropy", fc.expected},
                     {"svd_entropy", fc.svd_entropy}});
  }

  const auto gen = build_cascaded(p, n);
  const auto psi0 = initial_state(p, n);
  const auto master = integrate(gen, DensityMatrix::from_pure(psi0), sample_grid(c, c.dt));
  auto ens = run_ensemble_check(c, master, c.n_traj);
  const auto& stats = ens.stats;
  std::size_t forward = 0, entangling = 0;
  double max_entropy = 0.0;
  for (const auto& r : stats.records) {
    for (const auto& e : r.events) {
      if (e.channel != Channel::kForward) continue;
      ++forward;
      if (e.entropy_after > 0.0) ++entangling;
      max_entropy = std::max(max_entropy, e.entropy_after);
    }
  }

  const auto times = scaled_times(master, c.gamma);
  auto cols = base_columns(times.size());
  cols[1].values = pe_of(master);
  fill_from_ensemble(cols, stats);
  cols.push_back({"p_e_mean", stats.mean_pe});
  std::vector<double> mean_entropy = stats.mean_entropy;
  cols.push_back({"entropy_mean", mean_entropy});
  write_table(fs::path(c.out_dir) / "timeseries.csv", times, cols);
  write_events(fs::path(c.out_dir) / "events.jsonl", stats.records, c.show);
  PlotData plot{times, {{"p_e_master", cols[1].values}, {"p_e_mean", stats.mean_pe}, {"entropy_mean", mean_entropy}}, {}};
  add_trajectory_series(plot, stats.records, c.show, c.gamma);
  emit_plotdata(c.out_dir, plot);

  Check check;
  check.add("binary_entropy", worst <= c.tol_entropy);
  check.add("svd_oracle", worst_svd <= c.tol_entropy);
  check.add("forward_jump_entangles", entangling > 0);
  nlohmann::json report;
  report["model"] = model_json(c, p, n);
  report["jump_cases"] = table;
  report["max_entropy_error"] = worst;
  report["max_svd_error"] = worst_svd;
  report["ensemble"] = {{"n_traj", stats.n_traj},
                        {"fraction_within_3se", ens.fraction_within},
                        {"jump_rates", rates_json(stats.jump_rates, c.gamma)},
                        {"forward_jumps", forward},
                        {"entangling_forward_jumps", entangling},
                        {"max_entropy_after_forward", max_entropy}};
  return finish(c, std::move(report), std::move(check));
}

ScenarioOutcome run_decoherence(const RunConfig& c) {
  const auto p = model_params(c);
  const std::size_t n = truncation(c, p);
  const auto cases = decoherence_cases(c);
  Check check;
  nlohmann::json fits = nlohmann::json::array();
  for (const auto& dc : cases) {
    auto j = to_json(dc.fit);
    j["name"] = dc.name;
    j["focus"] = dc.focus;
    j["target"] = 0.5;
    j["relative_error"] = dc.relative_error;
    fits.push_back(j);
    check.add("rate_" + dc.name, dc.relative_error <= c.tol_decoherence);
  }

  // Full-model run at the configured split, for the p_e column.
  const auto master = integrate(build_cascaded(p, n), DensityMatrix::from_pure(initial_state(p, n)),
                                sample_grid(c, c.dt));
  const auto times = scaled_times(master, c.gamma);
  auto cols = base_columns(times.size());
  cols[1].values = pe_of(master);
  PlotData plot{times, {{"p_e_master", cols[1].values}}, {}};
  for (const auto& dc : cases) {
    cols.push_back({"coherence_" + dc.name, dc.coherence});
    plot.series.push_back({"coherence_" + dc.name, dc.coherence});
  }
  write_table(fs::path(c.out_dir) / "timeseries.csv", times, cols);
  write_events(fs::path(c.out_dir) / "events.jsonl", {}, 0);
  emit_plotdata(c.out_dir, plot);

  nlohmann::json report;
  report["model"] = model_json(c, p, n);
  report["fitted_rates"] = fits;
  report["tolerance"] = c.tol_decoherence;
  return finish(c, std::move(report), std::move(check));
}

ScenarioOutcome run_convergence(const RunConfig& c) {
  const auto p = model_params(c);
  const std::size_t n = truncation(c, p);
  Check check;

  // Step-size sweep against a reference at a quarter of the finest step.
  std::vector<double> dts = c.sweep_dt;
  std::sort(dts.begin(), dts.end(), std::greater<>());
  const double ref_dt = dts.back() / 4.0;
  const auto gen = build_cascaded(p, n);
  const auto rho0 = DensityMatrix::from_pure(initial_state(p, n));
  const auto reference = pe_of(integrate(gen, rho0, sample_grid(c, ref_dt)));
  std::vector<double> errors;
  std::vector<MasterSample> finest;
  for (double dt : dts) {
    auto run = integrate(gen, rho0, sample_grid(c, dt));
    const auto pe = pe_of(run);
    double e = 0.0;
    for (std::size_t i = 0; i < pe.size(); ++i) e = std::max(e, std::abs(pe[i] - reference[i]));
    errors.push_back(e);
    finest = std::move(run);
  }
  nlohmann::json dt_table = nlohmann::json::array();
  double min_order = std::numeric_limits<double>::infinity();
  {
    std::ofstream out(fs::path(c.out_dir) / "convergence_dt.csv", std::ios::binary);
    CsvWriter w(out, {"dt", "max_error", "order"});
    for (std::size_t i = 0; i < dts.size(); ++i) {
      double order = kNaN;
      if (i > 0) {
        order = std::log(errors[i - 1] / errors[i]) / std::log(dts[i - 1] / dts[i]);
        min_order = std::min(min_order, order);
      }
      w.row({format_real(dts[i]), format_real(errors[i]), format_real(order)});
      dt_table.push_back({{"dt", dts[i]}, {"max_error", errors[i]}, {"order", i > 0 ? nlohmann::json(order) : nlohmann::json()}});
    }
  }
  check.add("rk4_order", min_order >= 3.5);

  // Ensemble-size sweep: prefixes of one ensemble, since trajectory i's seed
  // depends only on (seed, i).
  const std::size_t largest = c.sweep_n_traj.back();
  auto full = run_ensemble_check(c, finest, largest);
  const auto& records = full.stats.records;
  std::vector<Channel> labels;
  for (const auto& ch : gen.channels()) labels.push_back(ch.label);
  const double duration = c.t_end / c.gamma;
  nlohmann::json n_table = nlohmann::json::array();
  std::vector<double> mean_se;
  bool consistent = true;
  {
    std::ofstream out(fs::path(c.out_dir) / "convergence_ntraj.csv", std::ios::binary);
    CsvWriter w(out, {"n_traj", "rms_deviation", "mean_stderr"});
    for (std::size_t m : c.sweep_n_traj) {
      const auto sub = check_against_master(aggregate(std::span(records).first(m), duration, labels), finest);
      double se = 0.0;
      for (double s : sub.stats.stderr_pe) se += s;
      se /= double(sub.stats.stderr_pe.size());
      mean_se.push_back(se);
      consistent = consistent && sub.rms_deviation <= 2.0 * se;
      w.row({std::to_string(m), format_real(sub.rms_deviation), format_real(se)});
      n_table.push_back({{"n_traj", m}, {"rms_deviation", sub.rms_deviation}, {"mean_stderr", se},
                         {"fraction_within_3se", sub.fraction_within}});
    }
  }
  // Standard error must follow 1/sqrt(n_traj) within 15%.
  const double expected_ratio = std::sqrt(double(c.sweep_n_traj.back()) / double(c.sweep_n_traj.front()));
  const double se_ratio = mean_se.front() / mean_se.back();
  check.add("stderr_scaling", std::abs(se_ratio / expected_ratio - 1.0) <= 0.15);
  check.add("deviation_within_2se", consistent);

  const auto times = scaled_times(finest, c.gamma);
  auto cols = base_columns(times.size());
  cols[1].values = pe_of(finest);
  fill_from_ensemble(cols, full.stats);
  cols.push_back({"p_e_mean", full.stats.mean_pe});
  write_table(fs::path(c.out_dir) / "timeseries.csv", times, cols);
  write_events(fs::path(c.out_dir) / "events.jsonl", records, c.show);
  PlotData plot{times, {{"p_e_master", cols[1].values}, {"p_e_mean", full.stats.mean_pe}}, {}};
  add_trajectory_series(plot, records, c.show, c.gamma);
  emit_plotdata(c.out_dir, plot);

  nlohmann::json report;
  report["model"] = model_json(c, p, n);
  report["dt_sweep"] = dt_table;
  report["reference_dt"] = ref_dt;
  report["min_order"] = min_order;
  report["n_traj_sweep"] = n_table;
  report["stderr_ratio"] = se_ratio;
  report["expected_stderr_ratio"] = expected_ratio;
  return finish(c, std::move(report), std::move(check));
}

}  // namespace

ModelParams model_params(const RunConfig& c) {
  const double g = c.gamma;
  ModelParams p;
  p.kappa_L = c.kappa_L * g;
  p.kappa_A = 0.5 * c.focus * g;
  p.kappa_A_prime = std::max(0.0, 0.5 * g - p.kappa_A);
  p.delta = c.delta * g;
  const double rabi = c.rabi * g;
  cd alpha = 0.0;
  if (c.drive != DriveShape::kNone && rabi > 0.0) alpha = alpha_for_rabi(rabi, p.kappa_L, p.kappa_A);
  switch (c.drive) {
    case DriveShape::kNone: p.drive = DriveSpec(ConstantDrive{0.0}); break;
    case DriveShape::kConstant: p.drive = DriveSpec(ConstantDrive{alpha}); break;
    case DriveShape::kRect: p.drive = DriveSpec(RectPulseDrive{alpha, c.t_on / g, c.t_off / g}); break;
    case DriveShape::kGaussian: p.drive = DriveSpec(GaussianDrive{alpha, c.t_center / g, c.width / g}); break;
  }
  switch (c.field) {
    case FieldInit::kSteady: p.initial_field = CoherentField{alpha}; break;
    case FieldInit::kVacuum: p.initial_field = CoherentField{0.0}; break;
    case FieldInit::kFock: p.initial_field = FockField{c.fock_n}; break;
  }
  p.validate();
  return p;
}

std::size_t truncation(const RunConfig& config, const ModelParams& params) {
  return config.n_trunc ? *config.n_trunc : default_truncation(params);
}

StateVector initial_state(const ModelParams& params, std::size_t n_trunc) {
  return tensor(initial_field_state(params, n_trunc), StateVector::basis(SpaceSpec::qubit(), kGround));
}

TimeGrid sample_grid(const RunConfig& c, double dt) {
  return TimeGrid{0.0, c.t_end / c.gamma, dt / c.gamma,
                  static_cast<std::size_t>(std::llround(c.sample_every / dt))};
}

MasterComparison compare_full_reduced(const RunConfig& c, double dt) {
  const auto p = model_params(c);
  const auto* field = std::get_if<CoherentField>(&p.initial_field);
  if (!field) throw SimulationError(ErrorCode::kConfig, "the reduced atom model needs a coherent initial field");
  const std::size_t n = truncation(c, p);
  const auto grid = sample_grid(c, dt);

  MasterComparison mc;
  mc.full = integrate(build_cascaded(p, n), DensityMatrix::from_pure(initial_state(p, n)), grid);
  const bool steady = p.drive.is_constant() && field->alpha0 == p.drive(0.0);
  const auto reduced = steady ? build_reduced_atom(p, field->alpha0)
                              : build_reduced_atom(p, [p](double t) { return alpha_of_t(p, t); });
  mc.reduced = integrate(reduced, DensityMatrix::from_pure(StateVector::basis(SpaceSpec::qubit(), kGround)), grid);
  mc.report = compare_atom_dynamics(mc.full, mc.reduced, c.tol_equivalence, p.delta, "full_vs_reduced");
  for (auto& t : mc.report.times) t *= c.gamma;
  for (const auto& s : mc.full) {
    mc.deficit.push_back(factorization_deficit(s.rho));
    mc.max_deficit = std::max(mc.max_deficit, mc.deficit.back());
  }
  return mc;
}

EnsembleCheck check_against_master(EnsembleStats stats, std::span<const MasterSample> master) {
  if (stats.mean_pe.size() != master.size()) {
    throw SimulationError(ErrorCode::kInvalidArgument,
                          fmt::format("ensemble has {} samples, master has {}", stats.mean_pe.size(), master.size()));
  }
  EnsembleCheck out;
  std::size_t within = 0;
  double ss = 0.0;
  for (std::size_t i = 0; i < master.size(); ++i) {
    const double d = std::abs(stats.mean_pe[i] - excitation_probability(master[i].rho));
    if (d <= 3.0 * stats.stderr_pe[i]) ++within;
    ss += d * d;
  }
  out.fraction_within = double(within) / double(master.size());
  out.rms_deviation = std::sqrt(ss / double(master.size()));
  for (const auto& r : stats.records) {
    for (const auto& e : r.events) {
      if (e.channel == Channel::kSide && e.pe_after != 0.0) out.side_jumps_ground = false;
      if (e.channel == Channel::kForward && e.pe_after > e.pe_before) out.forward_raises_pe = true;
    }
  }
  out.stats = std::move(stats);
  return out;
}

EnsembleCheck run_ensemble_check(const RunConfig& c, std::span<const MasterSample> master, std::size_t n_traj) {
  const auto p = model_params(c);
  const std::size_t n = truncation(c, p);
  EnsembleOptions opts;
  opts.workers = c.workers;
  opts.keep_records = true;
  opts.trajectory.scheme = c.scheme;
  auto stats = run_ensemble(build_cascaded(p, n), initial_state(p, n), sample_grid(c, c.traj_dt), n_traj, c.seed, opts);
  return check_against_master(std::move(stats), master);
}

std::vector<DecoherenceCase> decoherence_cases(const RunConfig& config) {
  std::vector<DecoherenceCase> out;
  const double off = config.drive == DriveShape::kGaussian ? config.t_center + 6.0 * config.width : config.t_off;
  const double fit_from = off + config.fit_delay;
  for (double focus : {config.focus, 1.0 - config.focus}) {
    RunConfig c = config;
    c.focus = focus;
    const auto mc = compare_full_reduced(c, c.dt);
    const bool swapped = out.size() == 2;
    for (int which = 0; which < 2; ++which) {
      const auto& samples = which == 0 ? mc.full : mc.reduced;
      DecoherenceCase dc;
      dc.name = std::string(which == 0 ? "full" : "reduced") + (swapped ? "_swapped" : "");
      dc.focus = focus;
      std::vector<double> fit_t;
      std::vector<cd> fit_c;
      for (const auto& s : samples) {
        const cd coh = atomic_coherence(s.rho);
        const double t = s.t * c.gamma;
        dc.times.push_back(t);
        dc.coherence.push_back(std::abs(coh));
        if (t >= fit_from - 1e-9) {
          fit_t.push_back(t);
          fit_c.push_back(coh);
        }
      }
      dc.fit = decoherence_rate_fit(fit_t, fit_c);
      dc.relative_error = std::abs(dc.fit.rate - 0.5) / 0.5;
      out.push_back(std::move(dc));
    }
  }
  return out;
}

std::vector<FockJumpCase> fock_jump_cases(const RunConfig& config) {
  const auto p = model_params(config);
  const std::vector<std::pair<double, double>> rates{
      {p.kappa_L, p.kappa_L}, {p.kappa_L, p.kappa_A}, {1.0, 0.3}, {0.25, 2.0}};
  const std::size_t n_max = std::max<std::size_t>(config.fock_n, 4);
  std::vector<FockJumpCase> out;
  for (const auto& [kl, ka] : rates) {
    ModelParams q;
    q.kappa_L = kl;
    q.kappa_A = ka;
    for (std::size_t n = 1; n <= n_max; ++n) {
      const std::size_t dim = n + 2;
      const auto gen = build_cascaded(q, dim);
      const auto after = apply_jump(StateVector::composite_basis(dim, n, kExcited), *gen.find_channel(Channel::kForward));
      // Schmidt coefficients from the SVD of the dim x 2 amplitude matrix.
      CMatrix coeffs(static_cast<Eigen::Index>(dim), 2);
      for (std::size_t k = 0; k < dim; ++k) {
        for (std::size_t s = 0; s < 2; ++s) coeffs(Eigen::Index(k), Eigen::Index(s)) = after.amplitudes()(Eigen::Index(k * 2 + s));
      }
      Eigen::JacobiSVD<CMatrix> svd(coeffs);
      double svd_entropy = 0.0;
      for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        const double w = svd.singularValues()(i) * svd.singularValues()(i);
        if (w > 0.0) svd_entropy -= w * std::log(w);
      }
      const double prob = kl * double(n) / (kl * double(n) + ka);
      out.push_back({n, kl, ka, schmidt_entropy(after), binary_entropy(prob), svd_entropy});
    }
  }
  return out;
}

ScenarioOutcome run_scenario(const RunConfig& config) {
  if (auto errors = check_constraints(config); !errors.empty()) {
    throw SimulationError(ErrorCode::kConfig, fmt::format("invalid config: {}", errors.front()));
  }
  fs::create_directories(config.out_dir);
  const auto& s = config.scenario;
  if (s == "fig2a" || s == "fig2b") return run_figure(config);
  if (s == "factorization-check") return run_factorization(config);
  if (s == "fock-entanglement") return run_fock(config);
  if (s == "decoherence-rate") return run_decoherence(config);
  return run_convergence(config);
}

}  // namespace cascade::cli
