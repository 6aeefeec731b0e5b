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

#include "cascade/generators/builders.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cascade/hilbert/algebra.hpp"

namespace cascade {

namespace {

constexpr cd kI{0.0, 1.0};

// Hermitian pair  i k (lambda(t) A^dagger - lambda*(t) A)  as drive terms.
std::vector<DriveTerm> drive_pair(const Operator& a, double k, std::function<cd(double)> lambda) {
  std::vector<DriveTerm> terms;
  terms.push_back({kI * k * a.adjoint(), lambda});
  terms.push_back({-kI * k * a, [lambda](double t) { return std::conj(lambda(t)); }});
  return terms;
}

}  // namespace

Generator build_cascaded(const ModelParams& params, std::size_t n_trunc) {
  params.validate();
  const auto space = SpaceSpec::composite(n_trunc);
  const Operator a = on_laser(fock_annihilation(n_trunc));
  const Operator sm = on_atom(qubit_lowering(), n_trunc);
  const Operator sp = sm.adjoint();
  const double kl = params.kappa_L;
  const double ka = params.kappa_A;

  Operator h = params.delta * (sp * sm) +
               kI * std::sqrt(kl * ka) * (a.adjoint() * sm - a * sp);
  std::vector<DriveTerm> terms;
  if (params.drive.is_constant()) {
    const cd lambda = params.drive(0.0);
    h = h + kI * kl * (lambda * a.adjoint() - std::conj(lambda) * a);
  } else {
    terms = drive_pair(a, kl, [d = params.drive](double t) { return d(t); });
  }
  std::vector<JumpChannel> channels{
      {Channel::kForward, std::sqrt(2.0 * kl) * a + std::sqrt(2.0 * ka) * sm},
      {Channel::kSide, std::sqrt(2.0 * params.kappa_A_prime) * sm},
  };
  return Generator(space, std::move(h), std::move(terms), std::move(channels));
}

Generator build_laser(const ModelParams& params, std::size_t n_trunc) {
  params.validate();
  const auto space = SpaceSpec::fock(n_trunc);
  const Operator a = fock_annihilation(n_trunc);
  const double kl = params.kappa_L;
  Operator h = Operator::zero(space);
  std::vector<DriveTerm> terms;
  if (params.drive.is_constant()) {
    const cd lambda = params.drive(0.0);
    h = kI * kl * (lambda * a.adjoint() - std::conj(lambda) * a);
  } else {
    terms = drive_pair(a, kl, [d = params.drive](double t) { return d(t); });
  }
  std::vector<JumpChannel> channels{{Channel::kLaserOut, std::sqrt(2.0 * kl) * a}};
  return Generator(space, std::move(h), std::move(terms), std::move(channels));
}

Generator build_reduced_atom(const ModelParams& params, AlphaFunction alpha) {
  params.validate();
  const auto space = SpaceSpec::qubit();
  const Operator sm = qubit_lowering();
  const double g = std::sqrt(4.0 * params.kappa_L * params.kappa_A);
  const double delta = params.delta;
  std::vector<DriveTerm> terms;
  terms.push_back({kI * g * sm, [alpha, delta](double t) {
                     return std::conj(alpha(t)) * std::exp(cd(0.0, -delta * t));
                   }});
  terms.push_back({-kI * g * sm.adjoint(), [alpha, delta](double t) {
                     return alpha(t) * std::exp(cd(0.0, delta * t));
                   }});
  std::vector<JumpChannel> channels{{Channel::kAtomOut, std::sqrt(params.gamma()) * sm}};
  return Generator(space, Operator::zero(space), std::move(terms), std::move(channels));
}

Generator build_reduced_atom(const ModelParams& params, cd constant_alpha) {
  if (params.delta != 0.0) {
    return build_reduced_atom(params, [constant_alpha](double) { return constant_alpha; });
  }
  params.validate();
  const auto space = SpaceSpec::qubit();
  const Operator sm = qubit_lowering();
  const double g = std::sqrt(4.0 * params.kappa_L * params.kappa_A);
  Operator h = kI * g * (std::conj(constant_alpha) * sm - constant_alpha * sm.adjoint());
  std::vector<JumpChannel> channels{{Channel::kAtomOut, std::sqrt(params.gamma()) * sm}};
  return Generator(space, std::move(h), {}, std::move(channels));
}

cd alpha_of_t(const ModelParams& params, double t) {
  const double k = params.kappa_L;
  cd alpha0{};
  if (const auto* c = std::get_if<CoherentField>(&params.initial_field)) alpha0 = c->alpha0;
  const cd homogeneous = alpha0 * std::exp(-k * t);
  if (t <= 0.0 || k == 0.0) return homogeneous;

  // k int_a^b e^{k (t' - t)} dt' = e^{k (b - t)} - e^{k (a - t)}
  const auto window = [k, t](double a, double b) {
    a = std::max(a, 0.0);
    b = std::min(b, t);
    return b > a ? std::exp(k * (b - t)) - std::exp(k * (a - t)) : 0.0;
  };

  return std::visit(
      [&](const auto& s) -> cd {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConstantDrive>) {
          return homogeneous + s.lambda * window(0.0, t);
        } else if constexpr (std::is_same_v<T, RectPulseDrive>) {
          return homogeneous + s.lambda * window(s.t_on, s.t_off);
        } else {
          const auto integrand = [&](double tp) {
            const double x = (tp - s.t_center) / s.width;
            return k * std::exp(k * (tp - t) - 0.5 * x * x);
          };
          const double integral =
              boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, t, 30,
                                                                            1e-12);
          return homogeneous + s.peak * integral;
        }
      },
      params.drive.shape());
}

StateVector initial_field_state(const ModelParams& params, std::size_t n_trunc) {
  if (const auto* c = std::get_if<CoherentField>(&params.initial_field)) {
    return coherent_state(c->alpha0, n_trunc).state;
  }
  const auto n = std::get<FockField>(params.initial_field).n;
  return StateVector::basis(SpaceSpec::fock(n_trunc), n);
}

std::size_t default_truncation(const ModelParams& params) {
  double peak = std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GaussianDrive>) {
          return std::abs(s.peak);
        } else {
          return std::abs(s.lambda);
        }
      },
      params.drive.shape());
  if (const auto* c = std::get_if<CoherentField>(&params.initial_field)) {
    return recommended_truncation(std::max(peak, std::abs(c->alpha0)));
  }
  const auto n = std::get<FockField>(params.initial_field).n;
  return std::max(n + 2, recommended_truncation(peak));
}

}  // namespace cascade
