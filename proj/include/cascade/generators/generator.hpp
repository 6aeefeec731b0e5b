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

#include <functional>
#include <string_view>
#include <vector>

#include "cascade/hilbert/operator.hpp"

namespace cascade {

enum class Channel { kForward, kSide, kLaserOut, kAtomOut };

std::string_view to_string(Channel c);

struct JumpChannel {
  Channel label;
  Operator op;
};

// coefficient(t) * op; terms are added in Hermitian-conjugate pairs.
struct DriveTerm {
  Operator op;
  std::function<cd(double)> coefficient;
};

// Lindblad generator in the rotating frame (hbar = 1):
//   H(t) = H_static + sum_k c_k(t) O_k,  channels J_c.
class Generator {
 public:
  Generator(SpaceSpec space, Operator static_h, std::vector<DriveTerm> drive_terms,
            std::vector<JumpChannel> channels);

  const SpaceSpec& space() const noexcept { return space_; }
  const Operator& static_hamiltonian() const noexcept { return static_h_; }
  const std::vector<DriveTerm>& drive_terms() const noexcept { return drive_terms_; }
  const std::vector<JumpChannel>& channels() const noexcept { return channels_; }
  bool time_independent() const noexcept { return drive_terms_.empty(); }

  Operator hamiltonian(double t) const;
  // sum_c J_c^dagger J_c
  const Operator& decay_operator() const noexcept { return decay_; }
  // H_static - (i/2) sum_c J_c^dagger J_c; add the drive terms for H_B(t).
  const Operator& nonhermitian_static() const noexcept { return hb_static_; }

  const JumpChannel* find_channel(Channel label) const;

 private:
  SpaceSpec space_;
  Operator static_h_;
  std::vector<DriveTerm> drive_terms_;
  std::vector<JumpChannel> channels_;
  Operator decay_;
  Operator hb_static_;
};

}  // namespace cascade
