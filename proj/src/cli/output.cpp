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

#include "cascade/cli/output.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>

#include <fmt/chrono.h>
#include <fmt/format.h>

#include "cascade/error.hpp"
#include "cascade/kernels/kernels.hpp"

namespace cascade::cli {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SimulationError(ErrorCode::kConfig, fmt::format("cannot write {}", path.string()));
  return out;
}

}  // namespace

std::string format_real(double value) {
  if (std::isnan(value)) return {};
  return fmt::format("{:.17e}", value);
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(&out), width_(header.size()) {
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != width_) {
    throw SimulationError(ErrorCode::kInvalidArgument,
                          fmt::format("CSV row has {} fields, header has {}", fields.size(), width_));
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) *out_ << ',';
    *out_ << csv_field(fields[i]);
  }
  *out_ << "\r\n";
}

void write_table(std::ostream& out, const std::vector<double>& times, const std::vector<Series>& columns) {
  std::vector<std::string> header{"t"};
  for (const auto& c : columns) {
    if (c.values.size() != times.size()) {
      throw SimulationError(ErrorCode::kInvalidArgument,
                            fmt::format("column {} has {} values for {} times", c.name, c.values.size(), times.size()));
    }
    header.push_back(c.name);
  }
  CsvWriter w(out, header);
  std::vector<std::string> fields(header.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    fields[0] = format_real(times[i]);
    for (std::size_t j = 0; j < columns.size(); ++j) fields[j + 1] = format_real(columns[j].values[i]);
    w.row(fields);
  }
}

void write_table(const std::filesystem::path& path, const std::vector<double>& times,
                 const std::vector<Series>& columns) {
  auto out = open_out(path);
  write_table(out, times, columns);
}

void emit_plotdata(const std::filesystem::path& dir, const PlotData& data) {
  {
    auto out = open_out(dir / "plotdata.csv");
    CsvWriter w(out, {"t", "series", "value"});
    for (const auto& s : data.series) {
      if (s.values.size() != data.times.size()) {
        throw SimulationError(ErrorCode::kInvalidArgument, fmt::format("series {} does not match the time grid", s.name));
      }
    }
    for (std::size_t i = 0; i < data.times.size(); ++i) {
      for (const auto& s : data.series) w.row({format_real(data.times[i]), s.name, format_real(s.values[i])});
    }
  }
  auto out = open_out(dir / "markers.csv");
  CsvWriter w(out, {"t", "channel", "trajectory"});
  for (const auto& m : data.markers) {
    w.row({format_real(m.t), std::string(to_string(m.channel)), std::to_string(m.trajectory)});
  }
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

void write_manifest(const std::filesystem::path& dir, const RunConfig& config) {
  {
    auto out = open_out(dir / "config.toml");
    out << to_toml(config);
  }
  auto out = open_out(dir / "manifest.txt");
  out << fmt::format("version: {}\n", CASCADE_VERSION);
  out << fmt::format("scenario: {}\n", config.scenario);
  out << fmt::format("config_hash: fnv1a64:{:016x}\n", config_hash(config));
  out << fmt::format("seed: {}\n", config.seed);
  out << fmt::format("kernels: {}\n", kernels::active().name);
  out << fmt::format("created: {:%Y-%m-%dT%H:%M:%SZ}\n",
                     std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()));
}

}  // namespace cascade::cli
