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

#include "cascade/generators/generator.hpp"

#include <fmt/format.h>

#include "cascade/error.hpp"

namespace cascade {

std::string_view to_string(Channel c) {
  switch (c) {
    case Channel::kForward: return "Forward";
    case Channel::kSide: return "Side";
    case Channel::kLaserOut: return "LaserOut";
    case Channel::kAtomOut: return "AtomOut";
  }
  return "?";
}

namespace {

Operator sum_decay(const SpaceSpec& space, const std::vector<JumpChannel>& channels) {
  Operator acc = Operator::zero(space);
  for (const auto& c : channels) acc = acc + c.op.adjoint() * c.op;
  return acc;
}

}  // namespace

Generator::Generator(SpaceSpec space, Operator static_h, std::vector<DriveTerm> drive_terms,
                     std::vector<JumpChannel> channels)
    : space_(space),
      static_h_(std::move(static_h)),
      drive_terms_(std::move(drive_terms)),
      channels_(std::move(channels)),
      decay_(sum_decay(space, channels_)),
      hb_static_(static_h_ - cd(0.0, 0.5) * decay_) {
  require_same_space(space_, static_h_.space(), "Generator hamiltonian");
  for (const auto& t : drive_terms_) {
    require_same_space(space_, t.op.space(), "Generator drive term");
    if (!t.coefficient) {
      throw SimulationError(ErrorCode::kInvalidArgument, "drive term without coefficient");
    }
  }
  for (const auto& c : channels_) {
    require_same_space(space_, c.op.space(), fmt::format("channel {}", to_string(c.label)).c_str());
  }
}

Operator Generator::hamiltonian(double t) const {
  Operator h = static_h_;
  for (const auto& term : drive_terms_) h = h + term.coefficient(t) * term.op;
  return h;
}

const JumpChannel* Generator::find_channel(Channel label) const {
  for (const auto& c : channels_) {
    if (c.label == label) return &c;
  }
  return nullptr;
}

}  // namespace cascade
