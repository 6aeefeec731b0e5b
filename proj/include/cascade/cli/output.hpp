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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cascade/cli/config.hpp"
#include "cascade/generators/generator.hpp"

namespace cascade::cli {

// Full-precision scientific notation; NaN is written as an empty field.
std::string format_real(double value);
// RFC 4180 quoting when the field contains a comma, quote, CR or LF.
std::string csv_field(std::string_view text);

// RFC 4180 writer with CRLF record separators.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream* out_;
  std::size_t width_;
};

struct Series {
  std::string name;
  std::vector<double> values;  // one per time; NaN where undefined
};

struct Marker {
  double t;
  Channel channel;
  std::size_t trajectory;
};

struct PlotData {
  std::vector<double> times;
  std::vector<Series> series;
  std::vector<Marker> markers;
};

// Wide table: a `t` column followed by one column per series.
void write_table(std::ostream& out, const std::vector<double>& times, const std::vector<Series>& columns);
void write_table(const std::filesystem::path& path, const std::vector<double>& times,
                 const std::vector<Series>& columns);

// plotdata.csv: t,series,value (one row per time and series).
// markers.csv: t,channel,trajectory.
void emit_plotdata(const std::filesystem::path& dir, const PlotData& data);

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

// manifest.txt: code version, scenario, config hash, seed, kernel table and
// a UTC timestamp. The resolved config goes to config.toml next to it.
void write_manifest(const std::filesystem::path& dir, const RunConfig& config);

}  // namespace cascade::cli
