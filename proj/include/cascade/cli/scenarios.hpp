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

#include <string>
#include <vector>

#include <json.hpp>

#include "cascade/analysis/analysis.hpp"
#include "cascade/cli/config.hpp"
#include "cascade/generators/builders.hpp"
#include "cascade/trajectory/ensemble.hpp"

namespace cascade::cli {

// Model in simulation units (gamma = config.gamma), alpha derived from
// (rabi, focus, kappa_L).
ModelParams model_params(const RunConfig& config);
std::size_t truncation(const RunConfig& config, const ModelParams& params);
// Initial field tensored with the atomic ground state.
StateVector initial_state(const ModelParams& params, std::size_t n_trunc);
TimeGrid sample_grid(const RunConfig& config, double dt);

struct MasterComparison {
  std::vector<MasterSample> full;
  std::vector<MasterSample> reduced;
  ComparisonReport report;
  std::vector<double> deficit;
  double max_deficit = 0.0;
};

// Full cascaded master equation vs the reduced atom driven by alpha(t).
MasterComparison compare_full_reduced(const RunConfig& config, double dt);

struct EnsembleCheck {
  EnsembleStats stats;
  // Fraction of sample times with |mean - master| <= 3 SE.
  double fraction_within = 0.0;
  double rms_deviation = 0.0;
  bool side_jumps_ground = true;
  bool forward_raises_pe = false;
};

EnsembleCheck run_ensemble_check(const RunConfig& config, std::span<const MasterSample> master,
                                 std::size_t n_traj);
EnsembleCheck check_against_master(EnsembleStats stats, std::span<const MasterSample> master);

struct DecoherenceCase {
  std::string name;
  double focus = 0.0;
  DecayFit fit;               // rate in units of gamma
  double relative_error = 0.0;  // |rate - 1/2| / (1/2)
  std::vector<double> times;
  std::vector<double> coherence;
};

// Drive pulse, then a free-decay fit of |<sigma_->| for the full and reduced
// models at `focus` and at the swapped split 1 - focus.
std::vector<DecoherenceCase> decoherence_cases(const RunConfig& config);

struct FockJumpCase {
  std::size_t n;
  double kappa_L;
  double kappa_A;
  double entropy;   // Schmidt entropy after the forward jump on |n>|+>
  double expected;  // binary entropy of kappa_L n / (kappa_L n + kappa_A)
  double svd_entropy;
};

std::vector<FockJumpCase> fock_jump_cases(const RunConfig& config);

struct ScenarioOutcome {
  nlohmann::json report;
  std::vector<std::string> failed_checks;
  bool passed() const { return failed_checks.empty(); }
};

// Runs config.scenario, writing every output file into config.out_dir.
ScenarioOutcome run_scenario(const RunConfig& config);

}  // namespace cascade::cli
