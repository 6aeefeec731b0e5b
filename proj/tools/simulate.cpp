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

#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "cascade/cli/config.hpp"
#include "cascade/cli/scenarios.hpp"
#include "cascade/error.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitCheckFailed = 3;
constexpr int kExitRuntime = 4;

}  // namespace

int main(int argc, char** argv) {
  using namespace cascade;
  CLI::App app{"Cascaded atom-laser simulator"};
  app.set_version_flag("--version", std::string(CASCADE_VERSION));

  std::string scenario;
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n_traj;
  std::optional<std::string> out_dir;
  std::optional<std::size_t> workers;
  bool check = false;
  bool validate_only = false;

  app.add_option("scenario", scenario,
                 fmt::format("One of: {}", fmt::join(cli::scenario_names(), ", ")))
      ->required();
  app.add_option("--config", config_path, "Config file (TOML-style, or JSON when it ends in .json)");
  app.add_option("--seed", seed, "Master seed");
  app.add_option("--traj", n_traj, "Number of trajectories")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--workers", workers, "Worker threads (0 = all cores)");
  app.add_flag("--check", check, "Exit nonzero when an acceptance tolerance fails");
  app.add_flag("--validate", validate_only, "Only validate the config");
  CLI11_PARSE(app, argc, argv);

  if (!cli::is_scenario(scenario)) {
    std::fprintf(stderr, "error: unknown scenario '%s'; valid scenarios: %s\n", scenario.c_str(),
                 fmt::format("{}", fmt::join(cli::scenario_names(), ", ")).c_str());
    return kExitConfig;
  }

  cli::ConfigResult result;
  if (config_path) {
    result = cli::validate_config(*config_path, scenario);
  } else {
    result.config = cli::preset(scenario);
  }
  if (result.config) {
    auto& c = *result.config;
    if (seed) c.seed = *seed;
    if (n_traj) c.n_traj = *n_traj;
    if (out_dir) c.out_dir = *out_dir;
    if (workers) c.workers = *workers;
    if (!config_path) result.errors = cli::check_constraints(c);
  }
  if (!result.ok()) {
    for (const auto& e : result.errors) std::fprintf(stderr, "config error: %s\n", e.c_str());
    return kExitConfig;
  }
  if (validate_only) {
    std::fputs(cli::to_toml(*result.config).c_str(), stdout);
    return 0;
  }

  try {
    const auto outcome = cli::run_scenario(*result.config);
    std::printf("%s: %s (outputs in %s)\n", scenario.c_str(), outcome.passed() ? "all checks passed" : "checks failed",
                result.config->out_dir.c_str());
    for (const auto& f : outcome.failed_checks) std::printf("  failed: %s\n", f.c_str());
    if (check && !outcome.passed()) return kExitCheckFailed;
  } catch (const SimulationError& e) {
    std::fprintf(stderr, "error [%s]: %s\n", std::string(to_string(e.code())).c_str(), e.what());
    return e.code() == ErrorCode::kConfig ? kExitConfig : kExitRuntime;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return 0;
}
