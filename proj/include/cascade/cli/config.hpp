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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cascade/trajectory/trajectory.hpp"

namespace cascade::cli {

enum class DriveShape { kNone, kConstant, kRect, kGaussian };
enum class FieldInit { kSteady, kVacuum, kFock };

// Rates are in units of gamma and times in units of 1/gamma.
struct RunConfig {
  std::string scenario;

  double gamma = 1.0;
  double kappa_L = 1.0;
  double focus = 0.4;  // 2 kappa_A / gamma
  double rabi = 2.0;   // Omega / gamma
  double delta = 0.0;

  DriveShape drive = DriveShape::kConstant;
  double t_on = 0.0;
  double t_off = 5.0;
  double t_center = 5.0;
  double width = 1.0;

  FieldInit field = FieldInit::kSteady;
  std::size_t fock_n = 1;

  double t_end = 20.0;
  double dt = 0.005;       // master equation
  double traj_dt = 0.005;  // trajectories
  double sample_every = 0.05;

  std::size_t n_traj = 2000;
  std::uint64_t seed = 1;
  std::optional<std::size_t> n_trunc;
  std::size_t workers = 0;
  JumpScheme scheme = JumpScheme::kBernoulli;
  std::size_t show = 3;  // trajectories whose samples are written out
  std::string out_dir = "out";

  std::vector<double> sweep_dt{0.04, 0.02, 0.01};
  std::vector<std::size_t> sweep_n_traj{500, 2000, 8000};
  double fit_delay = 5.0;  // wait after drive-off before fitting

  double tol_equivalence = 1e-3;
  double tol_factorization = 1e-4;
  double min_ensemble_fraction = 0.95;
  double tol_decoherence = 0.02;  // relative
  double tol_entropy = 1e-10;
};

const std::vector<std::string>& scenario_names();
bool is_scenario(std::string_view name);

// Defaults for a named scenario; throws SimulationError(kConfig) if unknown.
RunConfig preset(std::string_view scenario);

struct ConfigResult {
  std::optional<RunConfig> config;
  std::vector<std::string> errors;
  bool ok() const { return config.has_value() && errors.empty(); }
};

// Raw key -> values, keys dotted by section ("model.focus").
using ConfigItems = std::vector<std::pair<std::string, std::vector<std::string>>>;

ConfigItems parse_toml(std::string_view text);
ConfigItems parse_json(std::string_view text);

// Applies items on top of the scenario preset and checks every constraint;
// all problems are reported together. `scenario_override` wins over the
// file's `scenario` key when both are given and they agree.
ConfigResult build_config(const ConfigItems& items, std::optional<std::string> scenario_override = {});
ConfigResult validate_config(const std::string& path, std::optional<std::string> scenario_override = {});
std::vector<std::string> check_constraints(const RunConfig& config);

// Canonical TOML rendering; excludes run.out and run.workers, which do not
// change results.
std::string to_toml(const RunConfig& config);
std::uint64_t config_hash(const RunConfig& config);

}  // namespace cascade::cli
