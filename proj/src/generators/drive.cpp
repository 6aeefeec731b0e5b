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

#include <cmath>

#include <fmt/format.h>

#include "cascade/error.hpp"
#include "cascade/generators/model.hpp"

namespace cascade {

cd DriveSpec::operator()(double t) const {
  return std::visit(
      [t](const auto& s) -> cd {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConstantDrive>) {
          return s.lambda;
        } else if constexpr (std::is_same_v<T, RectPulseDrive>) {
          return (t >= s.t_on && t < s.t_off) ? s.lambda : cd{};
        } else {
          const double x = (t - s.t_center) / s.width;
          return s.peak * std::exp(-0.5 * x * x);
        }
      },
      shape_);
}

double ModelParams::rabi_frequency(double alpha_abs) const {
  return 4.0 * std::sqrt(kappa_L * kappa_A) * alpha_abs;
}

void ModelParams::validate() const {
  const auto check_rate = [](double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) {
      throw SimulationError(ErrorCode::kInvalidArgument,
                            fmt::format("{} must be a finite rate >= 0, got {}", name, v));
    }
  };
  check_rate(kappa_L, "kappa_L");
  check_rate(kappa_A, "kappa_A");
  check_rate(kappa_A_prime, "kappa_A_prime");
  if (!std::isfinite(delta)) throw SimulationError(ErrorCode::kInvalidArgument, "delta must be finite");
  if (const auto* g = std::get_if<GaussianDrive>(&drive.shape()); g && !(g->width > 0.0)) {
    throw SimulationError(ErrorCode::kInvalidArgument, "Gaussian drive width must be > 0");
  }
  if (const auto* r = std::get_if<RectPulseDrive>(&drive.shape()); r && !(r->t_off >= r->t_on)) {
    throw SimulationError(ErrorCode::kInvalidArgument, "rectangular pulse needs t_off >= t_on");
  }
}

double alpha_for_rabi(double rabi, double kappa_L, double kappa_A) {
  const double g = 4.0 * std::sqrt(kappa_L * kappa_A);
  if (!(g > 0.0)) {
    throw SimulationError(ErrorCode::kInvalidArgument,
                          "a Rabi frequency needs kappa_L > 0 and kappa_A > 0");
  }
  return rabi / g;
}

ModelParams steady_drive_params(double focus_ratio, double rabi, double kappa_L, double gamma,
                                double delta) {
  ModelParams p;
  p.kappa_L = kappa_L;
  p.kappa_A = 0.5 * focus_ratio * gamma;
  p.kappa_A_prime = 0.5 * gamma - p.kappa_A;
  p.delta = delta;
  const double alpha = alpha_for_rabi(rabi, p.kappa_L, p.kappa_A);
  p.drive = DriveSpec(ConstantDrive{alpha});
  p.initial_field = CoherentField{alpha};
  p.validate();
  return p;
}

}  // namespace cascade
