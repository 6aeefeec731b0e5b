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

#include <variant>

#include "cascade/hilbert/space.hpp"

namespace cascade {

struct ConstantDrive {
  cd lambda;
};

// lambda on [t_on, t_off), zero elsewhere.
struct RectPulseDrive {
  cd lambda;
  double t_on = 0.0;
  double t_off = 0.0;
};

// lambda_peak * exp(-(t - t_center)^2 / (2 width^2))
struct GaussianDrive {
  cd peak;
  double t_center = 0.0;
  double width = 1.0;
};

// Classical current lambda(t) driving the laser cavity mode.
class DriveSpec {
 public:
  using Shape = std::variant<ConstantDrive, RectPulseDrive, GaussianDrive>;

  DriveSpec() : shape_(ConstantDrive{0.0}) {}
  DriveSpec(Shape shape) : shape_(shape) {}

  cd operator()(double t) const;
  bool is_constant() const { return std::holds_alternative<ConstantDrive>(shape_); }
  const Shape& shape() const noexcept { return shape_; }

 private:
  Shape shape_;
};

struct CoherentField {
  cd alpha0;
};

struct FockField {
  std::size_t n = 0;
};

using InitialField = std::variant<CoherentField, FockField>;

// Rates are in the same (arbitrary) unit; scenarios use gamma = 1.
struct ModelParams {
  double kappa_L = 1.0;        // half the laser cavity linewidth
  double kappa_A = 0.0;        // forwards-channel atomic rate
  double kappa_A_prime = 0.0;  // side-channel atomic rate
  double delta = 0.0;          // omega_A - omega_L
  DriveSpec drive;
  InitialField initial_field = CoherentField{0.0};

  // Total free-space decay rate 2 kappa_A + 2 kappa_A'.
  double gamma() const { return 2.0 * kappa_A + 2.0 * kappa_A_prime; }
  // Rabi frequency 4 sqrt(kappa_L kappa_A) |alpha| produced by amplitude alpha.
  double rabi_frequency(double alpha_abs) const;

  // Throws SimulationError(kInvalidArgument) on negative or non-finite rates.
  void validate() const;
};

// Amplitude that yields Rabi frequency `rabi` for the given rates.
double alpha_for_rabi(double rabi, double kappa_L, double kappa_A);

// Constant drive lambda = alpha with kappa_A = focus_ratio gamma / 2 and
// kappa_A' = gamma / 2 - kappa_A; alpha gives the requested Rabi frequency.
// The field starts in its steady coherent state |alpha>.
ModelParams steady_drive_params(double focus_ratio, double rabi, double kappa_L, double gamma = 1.0,
                                double delta = 0.0);

}  // namespace cascade
