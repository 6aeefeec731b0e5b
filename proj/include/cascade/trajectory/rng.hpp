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
#include <random>

namespace cascade {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Seed of trajectory `index` in an ensemble:
//   mix64(master_seed + (index + 1) * 0x9E3779B97F4A7C15)
std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index);

// Per-trajectory stream: mt19937_64, whose output sequence is fixed by the
// standard, mapped to [0, 1) with 53 bits.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}
  double next() { return double(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cascade
