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

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cascade/trajectory/trajectory.hpp"

namespace cascade {

// One JSON object per line:
//   {"seed":N,"events":[{"t":T,"channel":"Forward"}],"samples":[{"t":T,"pe":P,"S":S,"norm2":Q}]}
std::string to_jsonl(const TrajectoryRecord& record);
void write_jsonl(std::ostream& out, std::span<const TrajectoryRecord> records);
std::vector<TrajectoryRecord> read_jsonl(std::istream& in);

Channel channel_from_string(std::string_view name);

}  // namespace cascade
