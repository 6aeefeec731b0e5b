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

#include "cascade/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "cascade/error.hpp"

namespace cascade::cli {

namespace {

const std::vector<std::string> kScenarios{"fig2a",           "fig2b",           "factorization-check",
                                          "fock-entanglement", "decoherence-rate", "convergence"};

using Values = std::vector<std::string>;
using Errors = std::vector<std::string>;

std::optional<double> to_double(const std::string& s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<std::uint64_t> to_uint(const std::string& s) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

bool single(const std::string& key, const Values& v, Errors& errors) {
  if (v.size() == 1) return true;
  errors.push_back(fmt::format("{}: expected a single value, got {}", key, v.size()));
  return false;
}

template <class T>
auto real_field(T RunConfig::*member) {
  return [member](RunConfig& c, const std::string& key, const Values& v, Errors& errors) {
    if (!single(key, v, errors)) return;
    if (auto d = to_double(v[0])) {
      c.*member = *d;
    } else {
      errors.push_back(fmt::format("{}: '{}' is not a finite number", key, v[0]));
    }
  };
}

template <class T>
auto uint_field(T RunConfig::*member) {
  return [member](RunConfig& c, const std::string& key, const Values& v, Errors& errors) {
    if (!single(key, v, errors)) return;
    if (auto u = to_uint(v[0])) {
      c.*member = static_cast<std::remove_cvref_t<decltype(c.*member)>>(*u);
    } else {
      errors.push_back(fmt::format("{}: '{}' is not a non-negative integer", key, v[0]));
    }
  };
}

template <class E>
auto enum_field(E RunConfig::*member, std::vector<std::pair<std::string, E>> names) {
  return [member, names](RunConfig& c, const std::string& key, const Values& v, Errors& errors) {
    if (!single(key, v, errors)) return;
    for (const auto& [n, e] : names) {
      if (n == v[0]) {
        c.*member = e;
        return;
      }
    }
    std::vector<std::string> valid;
    for (const auto& p : names) valid.push_back(p.first);
    errors.push_back(fmt::format("{}: '{}' is not one of {}", key, v[0], fmt::join(valid, ", ")));
  };
}

using Setter = std::function<void(RunConfig&, const std::string&, const Values&, Errors&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    t["model.gamma"] = real_field(&RunConfig::gamma);
    t["model.kappa_L"] = real_field(&RunConfig::kappa_L);
    t["model.focus"] = real_field(&RunConfig::focus);
    t["model.rabi"] = real_field(&RunConfig::rabi);
    t["model.delta"] = real_field(&RunConfig::delta);
    t["drive.shape"] = enum_field(&RunConfig::drive, std::vector<std::pair<std::string, DriveShape>>{
                                                         {"none", DriveShape::kNone},
                                                         {"constant", DriveShape::kConstant},
                                                         {"rect", DriveShape::kRect},
                                                         {"gaussian", DriveShape::kGaussian}});
    t["drive.t_on"] = real_field(&RunConfig::t_on);
    t["drive.t_off"] = real_field(&RunConfig::t_off);
    t["drive.t_center"] = real_field(&RunConfig::t_center);
    t["drive.width"] = real_field(&RunConfig::width);
    t["field.initial"] = enum_field(&RunConfig::field, std::vector<std::pair<std::string, FieldInit>>{
                                                           {"steady", FieldInit::kSteady},
                                                           {"vacuum", FieldInit::kVacuum},
                                                           {"fock", FieldInit::kFock}});
    t["field.n"] = uint_field(&RunConfig::fock_n);
    t["grid.t_end"] = real_field(&RunConfig::t_end);
    t["grid.dt"] = real_field(&RunConfig::dt);
    t["grid.traj_dt"] = real_field(&RunConfig::traj_dt);
    t["grid.sample_every"] = real_field(&RunConfig::sample_every);
    t["run.n_traj"] = uint_field(&RunConfig::n_traj);
    t["run.seed"] = uint_field(&RunConfig::seed);
    t["run.n_trunc"] = [](RunConfig& c, const std::string& key, const Values& v, Errors& errors) {
      if (!single(key, v, errors)) return;
      if (auto u = to_uint(v[0])) {
        c.n_trunc = static_cast<std::size_t>(*u);
      } else {
        errors.push_back(fmt::format("{}: '{}' is not a non-negative integer", key, v[0]));
      }
    };
    t["run.workers"] = uint_field(&RunConfig::workers);
    t["run.scheme"] = enum_field(&RunConfig::scheme, std::vector<std::pair<std::string, JumpScheme>>{
                                                         {"bernoulli", JumpScheme::kBernoulli},
                                                         {"waiting-time", JumpScheme::kWaitingTime}});
    t["run.show"] = uint_field(&RunConfig::show);
    t["run.out"] = [](RunConfig& c, const std::string& key, const Values& v, Errors& errors) {
      if (single(key, v, errors)) c.out_dir = v[0];
    };
    t["sweep.dt"] = [](RunConfig& c, const std::string& key, const Values& v, Errors& errors) {
      c.sweep_dt.clear();
      for (const auto& s : v) {
        if (auto d = to_double(s)) {
          c.sweep_dt.push_back(*d);
        } else {
          errors.push_back(fmt::format("{}: '{}' is not a finite number", key, s));
        }
      }
    };
    t["sweep.n_traj"] = [](RunConfig& c, const std::string& key, const Values& v, Errors& errors) {
      c.sweep_n_traj.clear();
      for (const auto& s : v) {
        if (auto u = to_uint(s)) {
          c.sweep_n_traj.push_back(static_cast<std::size_t>(*u));
        } else {
          errors.push_back(fmt::format("{}: '{}' is not a non-negative integer", key, s));
        }
      }
    };
    t["decoherence.fit_delay"] = real_field(&RunConfig::fit_delay);
    t["check.equivalence"] = real_field(&RunConfig::tol_equivalence);
    t["check.factorization"] = real_field(&RunConfig::tol_factorization);
    t["check.ensemble_fraction"] = real_field(&RunConfig::min_ensemble_fraction);
    t["check.decoherence"] = real_field(&RunConfig::tol_decoherence);
    t["check.entropy"] = real_field(&RunConfig::tol_entropy);
    return t;
  }();
  return table;
}

bool multiple_of(double x, double step) {
  const double q = x / step;
  return std::abs(q - std::round(q)) <= 1e-9 * std::max(1.0, q);
}

std::string_view shape_name(DriveShape s) {
  switch (s) {
    case DriveShape::kNone: return "none";
    case DriveShape::kConstant: return "constant";
    case DriveShape::kRect: return "rect";
    case DriveShape::kGaussian: return "gaussian";
  }
  return "?";
}

std::string_view field_name(FieldInit f) {
  switch (f) {
    case FieldInit::kSteady: return "steady";
    case FieldInit::kVacuum: return "vacuum";
    case FieldInit::kFock: return "fock";
  }
  return "?";
}

}  // namespace

const std::vector<std::string>& scenario_names() { return kScenarios; }

bool is_scenario(std::string_view name) {
  return std::find(kScenarios.begin(), kScenarios.end(), name) != kScenarios.end();
}

RunConfig preset(std::string_view scenario) {
  if (!is_scenario(scenario)) {
    throw SimulationError(ErrorCode::kConfig, fmt::format("unknown scenario '{}'; valid scenarios: {}",
                                                          scenario, fmt::join(kScenarios, ", ")));
  }
  RunConfig c;
  c.scenario = std::string(scenario);
  if (scenario == "fig2a") {
    c.focus = 0.04;
    // Forward jumps arrive at ~25 gamma here; a finer step keeps the
    // per-step jump probability and RK4 error small.
    c.traj_dt = 0.001;
  } else if (scenario == "fock-entanglement") {
    c.drive = DriveShape::kNone;
    c.field = FieldInit::kFock;
    c.fock_n = 2;
    c.kappa_L = 0.2;
    c.rabi = 0.0;
    c.n_traj = 200;
  } else if (scenario == "decoherence-rate") {
    c.drive = DriveShape::kRect;
    c.t_on = 0.0;
    c.t_off = 5.0;
    c.t_end = 25.0;
    c.kappa_L = 4.0;
    c.fit_delay = 5.0;
  } else if (scenario == "convergence") {
    c.sample_every = 0.2;
  }
  return c;
}

ConfigItems parse_toml(std::string_view text) {
  std::istringstream in{std::string(text)};
  ConfigItems out;
  for (const auto& item : CLI::ConfigTOML().from_config(in)) {
    // Section open/close markers.
    if (item.name == "++" || item.name == "--") continue;
    out.emplace_back(item.fullname(), item.inputs);
  }
  return out;
}

ConfigItems parse_json(std::string_view text) {
  const auto doc = nlohmann::json::parse(text);
  if (!doc.is_object()) throw SimulationError(ErrorCode::kConfig, "JSON config must be an object");
  ConfigItems out;
  const auto scalar = [](const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_number_float()) return fmt::format("{}", v.get<double>());
    return v.dump();
  };
  std::function<void(const std::string&, const nlohmann::json&)> walk = [&](const std::string& prefix,
                                                                             const nlohmann::json& node) {
    for (const auto& [key, value] : node.items()) {
      const std::string name = prefix.empty() ? key : prefix + "." + key;
      if (value.is_object()) {
        walk(name, value);
      } else if (value.is_array()) {
        Values v;
        for (const auto& e : value) v.push_back(scalar(e));
        out.emplace_back(name, std::move(v));
      } else {
        out.emplace_back(name, Values{scalar(value)});
      }
    }
  };
  walk("", doc);
  return out;
}

std::vector<std::string> check_constraints(const RunConfig& c) {
  Errors e;
  const auto positive = [&](const char* key, double v) {
    if (!(v > 0.0)) e.push_back(fmt::format("{}: must be > 0, got {}", key, v));
  };
  const auto non_negative = [&](const char* key, double v) {
    if (!(v >= 0.0)) e.push_back(fmt::format("{}: must be >= 0, got {}", key, v));
  };
  if (!is_scenario(c.scenario)) {
    e.push_back(fmt::format("scenario: unknown scenario '{}'; valid scenarios: {}", c.scenario,
                            fmt::join(kScenarios, ", ")));
  }
  positive("model.gamma", c.gamma);
  positive("model.kappa_L", c.kappa_L);
  non_negative("model.rabi", c.rabi);
  if (!(c.focus >= 0.0 && c.focus <= 1.0)) {
    e.push_back(fmt::format("model.focus: 2 kappa_A / gamma must lie in [0, 1], got {}", c.focus));
  }
  if (c.drive != DriveShape::kNone && c.rabi > 0.0 && c.focus == 0.0) {
    e.push_back("model.focus: a drive with rabi > 0 needs kappa_A > 0");
  }
  if (c.drive == DriveShape::kRect) {
    non_negative("drive.t_on", c.t_on);
    if (!(c.t_off > c.t_on)) e.push_back(fmt::format("drive.t_off: must exceed t_on = {}", c.t_on));
    // Pulse edges must fall on step boundaries of both integrators.
    for (const auto& [key, edge] : {std::pair{"drive.t_on", c.t_on}, std::pair{"drive.t_off", c.t_off}}) {
      for (double step : {c.dt, c.traj_dt}) {
        if (step > 0.0 && !multiple_of(edge, step)) {
          e.push_back(fmt::format("{}: {} is not a multiple of the step {}", key, edge, step));
        }
      }
    }
  }
  if (c.drive == DriveShape::kGaussian) positive("drive.width", c.width);

  positive("grid.t_end", c.t_end);
  positive("grid.dt", c.dt);
  positive("grid.traj_dt", c.traj_dt);
  positive("grid.sample_every", c.sample_every);
  if (c.dt > 0.0 && c.sample_every > 0.0 && !multiple_of(c.sample_every, c.dt)) {
    e.push_back(fmt::format("grid.sample_every: {} is not a multiple of grid.dt = {}", c.sample_every, c.dt));
  }
  if (c.traj_dt > 0.0 && c.sample_every > 0.0 && !multiple_of(c.sample_every, c.traj_dt)) {
    e.push_back(fmt::format("grid.sample_every: {} is not a multiple of grid.traj_dt = {}", c.sample_every,
                            c.traj_dt));
  }
  if (c.t_end > 0.0 && c.sample_every > 0.0 && !multiple_of(c.t_end, c.sample_every)) {
    e.push_back(fmt::format("grid.t_end: {} is not a multiple of grid.sample_every = {}", c.t_end,
                            c.sample_every));
  }

  if (c.n_traj == 0) e.push_back("run.n_traj: must be >= 1");
  if (c.n_trunc && *c.n_trunc == 0) e.push_back("run.n_trunc: must be >= 1");
  if (c.field == FieldInit::kFock && c.n_trunc && *c.n_trunc <= c.fock_n) {
    e.push_back(fmt::format("run.n_trunc: {} cannot hold the Fock state |{}>", *c.n_trunc, c.fock_n));
  }
  if (c.field == FieldInit::kSteady && c.drive == DriveShape::kNone) {
    e.push_back("field.initial: 'steady' needs a drive; use 'vacuum' or 'fock'");
  }

  if (c.scenario == "convergence") {
    if (c.sweep_dt.size() < 2) e.push_back("sweep.dt: need at least two step sizes");
    for (double dt : c.sweep_dt) {
      if (!(dt > 0.0)) {
        e.push_back(fmt::format("sweep.dt: must be > 0, got {}", dt));
      } else if (c.sample_every > 0.0 && !multiple_of(c.sample_every, dt)) {
        e.push_back(fmt::format("sweep.dt: grid.sample_every = {} is not a multiple of {}", c.sample_every, dt));
      }
    }
    if (c.sweep_n_traj.size() < 2) e.push_back("sweep.n_traj: need at least two ensemble sizes");
    for (std::size_t i = 0; i < c.sweep_n_traj.size(); ++i) {
      if (c.sweep_n_traj[i] == 0) e.push_back("sweep.n_traj: sizes must be >= 1");
      if (i > 0 && c.sweep_n_traj[i] <= c.sweep_n_traj[i - 1]) e.push_back("sweep.n_traj: sizes must increase");
    }
  }
  if (c.scenario == "decoherence-rate") {
    if (c.drive != DriveShape::kRect && c.drive != DriveShape::kGaussian) {
      e.push_back("drive.shape: decoherence-rate needs a pulse ('rect' or 'gaussian') that switches off");
    }
    non_negative("decoherence.fit_delay", c.fit_delay);
    const double off = c.drive == DriveShape::kGaussian ? c.t_center + 6.0 * c.width : c.t_off;
    if (!(off + c.fit_delay < c.t_end)) {
      e.push_back(fmt::format("grid.t_end: {} leaves no fit window after drive-off at {} + fit_delay {}", c.t_end,
                              off, c.fit_delay));
    }
  }
  positive("check.equivalence", c.tol_equivalence);
  positive("check.factorization", c.tol_factorization);
  positive("check.decoherence", c.tol_decoherence);
  positive("check.entropy", c.tol_entropy);
  if (!(c.min_ensemble_fraction > 0.0 && c.min_ensemble_fraction <= 1.0)) {
    e.push_back("check.ensemble_fraction: must lie in (0, 1]");
  }
  return e;
}

ConfigResult build_config(const ConfigItems& items, std::optional<std::string> scenario_override) {
  ConfigResult result;
  if (items.empty()) result.errors.push_back("config is empty; at least 'scenario' must be set");

  std::optional<std::string> file_scenario;
  for (const auto& [key, values] : items) {
    if (key == "scenario" && values.size() == 1) file_scenario = values[0];
  }
  if (scenario_override && file_scenario && *scenario_override != *file_scenario) {
    result.errors.push_back(fmt::format("scenario: config names '{}' but '{}' was requested", *file_scenario,
                                        *scenario_override));
  }
  const auto name = scenario_override ? scenario_override : file_scenario;
  if (!name) {
    result.errors.push_back("scenario: missing");
    return result;
  }
  if (!is_scenario(*name)) {
    result.errors.push_back(
        fmt::format("scenario: unknown scenario '{}'; valid scenarios: {}", *name, fmt::join(kScenarios, ", ")));
    return result;
  }

  RunConfig c = preset(*name);
  std::map<std::string, int> seen;
  for (const auto& [key, values] : items) {
    if (++seen[key] == 2) result.errors.push_back(fmt::format("{}: set more than once", key));
    if (key == "scenario") continue;
    const auto it = setters().find(key);
    if (it == setters().end()) {
      result.errors.push_back(fmt::format("{}: unknown key", key));
      continue;
    }
    it->second(c, key, values, result.errors);
  }
  for (auto& err : check_constraints(c)) result.errors.push_back(std::move(err));
  result.config = std::move(c);
  return result;
}

ConfigResult validate_config(const std::string& path, std::optional<std::string> scenario_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {std::nullopt, {fmt::format("{}: cannot open", path)}};
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const bool is_json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  ConfigItems items;
  try {
    items = is_json ? parse_json(text) : parse_toml(text);
  } catch (const std::exception& ex) {
    return {std::nullopt, {fmt::format("{}: parse error: {}", path, ex.what())}};
  }
  return build_config(items, std::move(scenario_override));
}

std::string to_toml(const RunConfig& c) {
  std::string s;
  const auto line = [&s](std::string_view key, const auto& value) { s += fmt::format("{} = {}\n", key, value); };
  const auto real = [](double v) { return fmt::format("{:.17g}", v); };
  const auto quoted = [](std::string_view v) { return fmt::format("\"{}\"", v); };
  line("scenario", quoted(c.scenario));
  s += "\n[model]\n";
  line("gamma", real(c.gamma));
  line("kappa_L", real(c.kappa_L));
  line("focus", real(c.focus));
  line("rabi", real(c.rabi));
  line("delta", real(c.delta));
  s += "\n[drive]\n";
  line("shape", quoted(shape_name(c.drive)));
  line("t_on", real(c.t_on));
  line("t_off", real(c.t_off));
  line("t_center", real(c.t_center));
  line("width", real(c.width));
  s += "\n[field]\n";
  line("initial", quoted(field_name(c.field)));
  line("n", c.fock_n);
  s += "\n[grid]\n";
  line("t_end", real(c.t_end));
  line("dt", real(c.dt));
  line("traj_dt", real(c.traj_dt));
  line("sample_every", real(c.sample_every));
  s += "\n[run]\n";
  line("n_traj", c.n_traj);
  line("seed", c.seed);
  if (c.n_trunc) line("n_trunc", *c.n_trunc);
  line("scheme", quoted(c.scheme == JumpScheme::kBernoulli ? "bernoulli" : "waiting-time"));
  line("show", c.show);
  s += "\n[sweep]\n";
  std::vector<std::string> dts;
  for (double d : c.sweep_dt) dts.push_back(real(d));
  line("dt", fmt::format("[{}]", fmt::join(dts, ", ")));
  line("n_traj", fmt::format("[{}]", fmt::join(c.sweep_n_traj, ", ")));
  s += "\n[decoherence]\n";
  line("fit_delay", real(c.fit_delay));
  s += "\n[check]\n";
  line("equivalence", real(c.tol_equivalence));
  line("factorization", real(c.tol_factorization));
  line("ensemble_fraction", real(c.min_ensemble_fraction));
  line("decoherence", real(c.tol_decoherence));
  line("entropy", real(c.tol_entropy));
  return s;
}

std::uint64_t config_hash(const RunConfig& config) {
  // FNV-1a, 64 bit.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : to_toml(config)) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace cascade::cli
