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

// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "cascade/cli/scenarios.hpp"
#include "cascade/hilbert/algebra.hpp"

using namespace cascade;
using namespace cascade::cli;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, fmt::format("exception: {}", e.what())};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!v.pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

double max_forward_rate(const EnsembleStats& stats) {
  for (const auto& r : stats.jump_rates) {
    if (r.channel == Channel::kForward) return r.rate;
  }
  return 0.0;
}

}  // namespace

int main() {
  const RunConfig fig2a = preset("fig2a");
  const RunConfig fig2b = preset("fig2b");
  MasterComparison mc_b;
  EnsembleCheck ens_b;

  criterion(1, "Equivalence of full and reduced atom dynamics", [&] {
    mc_b = compare_full_reduced(fig2b, fig2b.dt);
    return Verdict{mc_b.report.max_abs_error <= 1e-3,
                   fmt::format("max |dp_e| = {:.3e} over gamma t in [0, {}], tol 1e-3", mc_b.report.max_abs_error,
                               fig2b.t_end)};
  });

  criterion(2, "No extra decoherence", [&] {
    const auto cases = decoherence_cases(preset("decoherence-rate"));
    bool ok = cases.size() == 4;
    std::string detail;
    for (const auto& c : cases) {
      ok = ok && c.relative_error <= 0.02;
      detail += fmt::format("{}={:.6f} ", c.name, c.fit.rate);
    }
    return Verdict{ok, detail + "(target 0.5 gamma, tol 2%)"};
  });

  MasterComparison mc_a;
  criterion(3, "Factorization of the field", [&] {
    mc_a = compare_full_reduced(fig2a, fig2a.dt);
    const bool ok = mc_a.max_deficit <= 1e-4 && mc_b.max_deficit <= 1e-4 && !mc_b.full.empty();
    return Verdict{ok, fmt::format("min purity fig2a {:.12f} (N={}), fig2b {:.12f} (N={})", 1.0 - mc_a.max_deficit,
                                   truncation(fig2a, model_params(fig2a)), 1.0 - mc_b.max_deficit,
                                   truncation(fig2b, model_params(fig2b)))};
  });

  criterion(4, "Trajectory/master consistency", [&] {
    ens_b = run_ensemble_check(fig2b, mc_b.full, 2000);
    return Verdict{ens_b.fraction_within >= 0.95,
                   fmt::format("{:.1f}% of {} sample times within 3 SE, n_traj = {}", 100.0 * ens_b.fraction_within,
                               ens_b.stats.times.size(), ens_b.stats.n_traj)};
  });

  criterion(5, "Fock-state jump entanglement", [&] {
    const auto cases = fock_jump_cases(preset("fock-entanglement"));
    double worst = 0.0, worst_svd = 0.0, ln2_error = 1.0;
    for (const auto& c : cases) {
      worst = std::max(worst, std::abs(c.entropy - c.expected));
      worst_svd = std::max(worst_svd, std::abs(c.entropy - c.svd_entropy));
      if (c.n == 1 && c.kappa_L == c.kappa_A) ln2_error = std::abs(c.entropy - std::log(2.0));
    }
    const bool ok = ln2_error <= 1e-10 && worst <= 1e-10 && worst_svd <= 1e-10;
    return Verdict{ok, fmt::format("|S - ln 2| = {:.1e}; max |S - H(p)| = {:.1e}, max |S - S_svd| = {:.1e} over {} cases",
                                   ln2_error, worst, worst_svd, cases.size())};
  });

  criterion(6, "No entanglement under coherent drive", [&] {
    double worst = 0.0;
    std::size_t points = 0;
    for (std::size_t i = 0; i < 100 && i < ens_b.stats.records.size(); ++i) {
      for (const auto& s : ens_b.stats.records[i].samples) {
        worst = std::max(worst, s.entropy);
        ++points;
      }
    }
    return Verdict{worst < 1e-5 && points > 0,
                   fmt::format("max conditional entropy {:.2e} over {} samples of 100 trajectories", worst, points)};
  });

  criterion(7, "Steady state", [&] {
    ModelParams p;
    p.kappa_A = 0.2;
    p.kappa_A_prime = 0.3;
    const auto rho = steady_state(build_reduced_atom(p, alpha_for_rabi(2.0, p.kappa_L, p.kappa_A)), 1e-12);
    const double pe = excitation_probability(rho);
    return Verdict{std::abs(pe - 4.0 / 9.0) <= 1e-4, fmt::format("p_e = {:.10f}, 4/9 = {:.10f}", pe, 4.0 / 9.0)};
  });

  criterion(8, "Focusing contrast", [&] {
    const auto ens_a = run_ensemble_check(fig2a, mc_a.full, 200);
    const double ra = max_forward_rate(ens_a.stats), rb = max_forward_rate(ens_b.stats);
    const double ratio = ra / rb;
    const bool ok = std::abs(ratio / 10.0 - 1.0) <= 0.2 && ens_a.side_jumps_ground && ens_b.side_jumps_ground &&
                    ens_b.forward_raises_pe;
    return Verdict{ok, fmt::format("Forward rates {:.3f} / {:.3f} = {:.2f}; side jumps to ground: {}; "
                                   "forward jump raising p_e in fig2b: {}",
                                   ra, rb, ratio, ens_a.side_jumps_ground && ens_b.side_jumps_ground,
                                   ens_b.forward_raises_pe)};
  });

  criterion(9, "Numerics", [&] {
    const auto p = model_params(fig2b);
    const std::size_t n = truncation(fig2b, p);
    const auto gen = build_cascaded(p, n);
    const auto rho0 = DensityMatrix::from_pure(initial_state(p, n));
    RunConfig coarse = fig2b;
    coarse.sample_every = 0.2;
    const auto pe_at = [&](double dt) {
      std::vector<double> out;
      for (const auto& s : integrate(gen, rho0, sample_grid(coarse, dt))) out.push_back(excitation_probability(s.rho));
      return out;
    };
    const auto ref = pe_at(0.0025);
    double prev = 0.0, min_order = 1e9;
    for (double dt : {0.04, 0.02, 0.01}) {
      const auto pe = pe_at(dt);
      double e = 0.0;
      for (std::size_t i = 0; i < pe.size(); ++i) e = std::max(e, std::abs(pe[i] - ref[i]));
      if (prev > 0.0) min_order = std::min(min_order, std::log2(prev / e));
      prev = e;
    }

    // Norm-decay identity on conditional states along one trajectory.
    const Operator hb = nonhermitian_hamiltonian(gen, 0.0);
    double worst_identity = 0.0;
    TrajectoryOptions opts;
    opts.observer = [&](double, const StateVector& psi) {
      const double h = 1e-5;
      const auto psi1 = nojump_step(psi, hb, h, 1.0);
      const auto psi2 = nojump_step(psi1, hb, h, 1.0);
      const double derivative = (psi2.norm2() - psi.norm2()) / (2.0 * h);
      const double expected = -expectation(gen.decay_operator(), psi1).real() * psi1.norm2();
      worst_identity = std::max(worst_identity, std::abs(derivative - expected));
    };
    run_trajectory(gen, initial_state(p, n), sample_grid(fig2b, fig2b.traj_dt), 2024, opts);

    bool invariants = true;
    for (const auto& s : mc_b.full) invariants = invariants && s.rho.invariants().ok();
    for (const auto& s : mc_a.full) invariants = invariants && s.rho.invariants().ok();
    const bool ok = min_order >= 3.5 && worst_identity <= 1e-6 && invariants;
    return Verdict{ok, fmt::format("RK4 order {:.3f}; norm identity residual {:.1e}; invariants at all samples: {}",
                                   min_order, worst_identity, invariants)};
  });

  criterion(10, "Determinism", [&] {
    const fs::path root = fs::temp_directory_path() / "cascade_acceptance";
    fs::remove_all(root);
    std::vector<std::string> outputs;
    for (const auto& [name, workers] : {std::pair{"w1a", 1}, std::pair{"w1b", 1}, std::pair{"w8", 8}}) {
      RunConfig c = fig2b;
      c.n_traj = 100;
      c.workers = static_cast<std::size_t>(workers);
      c.out_dir = (root / name).string();
      run_scenario(c);
      outputs.push_back(slurp(root / name / "events.jsonl"));
    }
    const bool ok = !outputs[0].empty() && outputs[0] == outputs[1] && outputs[0] == outputs[2];
    return Verdict{ok, fmt::format("events.jsonl ({} bytes) identical across runs and workers 1/8: {}",
                                   outputs[0].size(), ok)};
  });

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAILED" : "PASSED", failures);
  return failures ? 1 : 0;
}
