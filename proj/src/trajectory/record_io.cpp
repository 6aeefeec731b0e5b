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

#include "cascade/trajectory/record_io.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

#include "cascade/error.hpp"

namespace cascade {

using nlohmann::json;

Channel channel_from_string(std::string_view name) {
  for (Channel c : {Channel::kForward, Channel::kSide, Channel::kLaserOut, Channel::kAtomOut}) {
    if (to_string(c) == name) return c;
  }
  throw SimulationError(ErrorCode::kInvalidArgument, "unknown channel '" + std::string(name) + "'");
}

std::string to_jsonl(const TrajectoryRecord& record) {
  json events = json::array();
  for (const auto& e : record.events) {
    events.push_back({{"t", e.t}, {"channel", std::string(to_string(e.channel))}});
  }
  json samples = json::array();
  for (const auto& s : record.samples) {
    samples.push_back({{"t", s.t}, {"pe", s.pe}, {"S", s.entropy}, {"norm2", s.norm2}});
  }
  json j = {{"seed", record.seed}, {"events", std::move(events)}, {"samples", std::move(samples)}};
  return j.dump();
}

void write_jsonl(std::ostream& out, std::span<const TrajectoryRecord> records) {
  for (const auto& r : records) out << to_jsonl(r) << '\n';
}

std::vector<TrajectoryRecord> read_jsonl(std::istream& in) {
  std::vector<TrajectoryRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    TrajectoryRecord r;
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& e : j.at("events")) {
      r.events.push_back({e.at("t").get<double>(), channel_from_string(e.at("channel").get<std::string>())});
    }
    for (const auto& s : j.at("samples")) {
      r.samples.push_back({s.at("t").get<double>(), s.at("pe").get<double>(), s.at("S").get<double>(),
                           s.at("norm2").get<double>()});
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace cascade
