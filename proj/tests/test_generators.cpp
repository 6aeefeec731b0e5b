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

#include <doctest.h>

#include <cmath>
#include <functional>

#include "cascade/analysis/analysis.hpp"
#include "cascade/error.hpp"
#include "cascade/generators/builders.hpp"
#include "cascade/hilbert/algebra.hpp"
#include "cascade/master/master.hpp"
#include "cascade/trajectory/trajectory.hpp"

using namespace cascade;

namespace {

constexpr cd kI{0.0, 1.0};

// Adaptive Simpson on a real integrand; test-only oracle.
double simpson(const std::function<double(double)>& f, double a, double b, double tol, int depth = 0) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double left = (m - a) / 6.0 * (fa + 4.0 * f(lm) + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * f(rm) + fb);
  if (depth > 40 || std::abs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson(f, a, m, 0.5 * tol, depth + 1) + simpson(f, m, b, 0.5 * tol, depth + 1);
}

ModelParams base_params() {
  ModelParams p;
  p.kappa_L = 0.8;
  p.kappa_A = 0.3;
  p.kappa_A_prime = 0.2;
  p.delta = 0.4;
  p.drive = DriveSpec(ConstantDrive{cd(0.9, 0.3)});
  p.initial_field = CoherentField{cd(0.9, 0.3)};
  return p;
}

}  // namespace

TEST_CASE("cascaded generator structure") {
  SUBCASE("kappa_A = 0 decouples the atom") {
    auto p = base_params();
    p.kappa_A = 0.0;
    const auto gen = build_cascaded(p, 5);
    const Operator a = on_laser(fock_annihilation(5));
    CHECK(gen.find_channel(Channel::kForward)->op.max_abs_diff(std::sqrt(2.0 * p.kappa_L) * a) == 0.0);
    const Operator sm = on_atom(qubit_lowering(), 5);
    const Operator expected_h = p.delta * (sm.adjoint() * sm) +
                                kI * p.kappa_L * (p.drive(0.0) * a.adjoint() - std::conj(p.drive(0.0)) * a);
    CHECK(gen.hamiltonian(0.0).max_abs_diff(expected_h) <= 1e-15);
  }

  SUBCASE("H_B matches the explicit non-Hermitian Hamiltonian at N = 4") {
    const auto p = base_params();
    const auto gen = build_cascaded(p, 4);
    const Operator a = on_laser(fock_annihilation(4));
    const Operator sm = on_atom(qubit_lowering(), 4);
    const Operator sp = sm.adjoint();
    const cd lambda = p.drive(0.0);
    // H_L + H_A - i kL a+a - i (gamma/2) s+s- - 2 i sqrt(kL kA) a s+
    const Operator explicit_hb =
        p.delta * (sp * sm) + kI * p.kappa_L * (lambda * a.adjoint() - std::conj(lambda) * a) -
        kI * p.kappa_L * (a.adjoint() * a) - kI * (0.5 * p.gamma()) * (sp * sm) -
        2.0 * kI * std::sqrt(p.kappa_L * p.kappa_A) * (a * sp);
    CHECK(nonhermitian_hamiltonian(gen, 0.0).max_abs_diff(explicit_hb) <= 1e-14);
  }

  SUBCASE("H_B has no a+ s- re-emission block") {
    const auto gen = build_cascaded(base_params(), 6);
    const Operator hb = nonhermitian_hamiltonian(gen, 0.3);
    // <n+1, -| H_B |n, +> would be the a+ s- amplitude.
    for (std::size_t n = 0; n + 1 < 6; ++n) {
      CHECK(std::abs(hb.at((n + 1) * 2 + kGround, n * 2 + kExcited)) <= 1e-15);
      CHECK(std::abs(hb.at(n * 2 + kExcited, (n + 1) * 2 + kGround)) > 0.1);
    }
  }

  SUBCASE("constant drive gives a time-independent generator") {
    auto p = base_params();
    p.delta = 0.0;
    const auto gen = build_cascaded(p, 4);
    CHECK(gen.time_independent());
    CHECK(gen.hamiltonian(0.0).max_abs_diff(gen.hamiltonian(7.3)) == 0.0);
  }
}

TEST_CASE("all builders produce Hermitian H(t)") {
  auto p = base_params();
  p.drive = DriveSpec(GaussianDrive{cd(1.2, -0.4), 2.0, 0.7});
  const auto cascaded = build_cascaded(p, 6);
  const auto laser = build_laser(p, 6);
  const auto reduced = build_reduced_atom(p, [&p](double t) { return alpha_of_t(p, t); });
  p.drive = DriveSpec(RectPulseDrive{cd(0.5, 0.5), 1.0, 3.0});
  const auto rect = build_cascaded(p, 6);
  for (double t = 0.0; t <= 5.0; t += 0.25) {
    CHECK(cascaded.hamiltonian(t).is_hermitian(1e-12));
    CHECK(laser.hamiltonian(t).is_hermitian(1e-12));
    CHECK(reduced.hamiltonian(t).is_hermitian(1e-12));
    CHECK(rect.hamiltonian(t).is_hermitian(1e-12));
  }
}

TEST_CASE("laser-only generator") {
  SUBCASE("no drive keeps the vacuum") {
    ModelParams p;
    p.kappa_L = 1.0;
    const auto gen = build_laser(p, 6);
    const auto rho0 = DensityMatrix::from_pure(StateVector::basis(SpaceSpec::fock(6), 0));
    const auto out = integrate(gen, rho0, TimeGrid{0.0, 3.0, 0.01, 50});
    for (const auto& s : out) CHECK((s.rho.matrix() - rho0.matrix()).cwiseAbs().maxCoeff() <= 1e-15);
  }
  SUBCASE("<a>(t) follows alpha_of_t from vacuum") {
    ModelParams p;
    p.kappa_L = 1.0;
    p.drive = DriveSpec(ConstantDrive{1.0});
    p.initial_field = CoherentField{0.0};
    const auto gen = build_laser(p, 15);
    const auto rho0 = DensityMatrix::from_pure(StateVector::basis(SpaceSpec::fock(15), 0));
    const auto out = integrate(gen, rho0, TimeGrid{0.0, 5.0, 0.005, 20});
    double worst = 0.0;
    for (const auto& s : out) worst = std::max(worst, std::abs(field_amplitude(s.rho) - alpha_of_t(p, s.t)));
    CHECK(worst <= 1e-6);
  }
  SUBCASE("constant drive settles at alpha = lambda") {
    ModelParams p;
    p.kappa_L = 1.0;
    p.drive = DriveSpec(ConstantDrive{cd(0.6, -0.2)});
    CHECK(std::abs(alpha_of_t(p, 60.0) - cd(0.6, -0.2)) <= 1e-12);
  }
}

TEST_CASE("reduced atom generator") {
  SUBCASE("alpha = 0 is pure decay") {
    auto p = base_params();
    const auto gen = build_reduced_atom(p, cd(0.0));
    const auto rho0 = DensityMatrix::from_pure(StateVector::basis(SpaceSpec::qubit(), kExcited));
    const auto out = integrate(gen, rho0, TimeGrid{0.0, 6.0, 0.005, 20});
    double worst = 0.0;
    for (const auto& s : out) {
      worst = std::max(worst, std::abs(excitation_probability(s.rho) - std::exp(-p.gamma() * s.t)));
    }
    CHECK(worst <= 1e-8);
  }
  SUBCASE("J_A carries sqrt(2 kA + 2 kA')") {
    auto p = base_params();
    const auto gen = build_reduced_atom(p, cd(1.0));
    REQUIRE(gen.channels().size() == 1);
    CHECK(gen.channels()[0].label == Channel::kAtomOut);
    CHECK(std::abs(gen.channels()[0].op.at(kGround, kExcited) - std::sqrt(2.0 * 0.3 + 2.0 * 0.2)) <= 1e-15);
  }
  SUBCASE("oscillation frequency is 4 sqrt(kL kA) alpha") {
    ModelParams p;
    p.kappa_L = 1.0;
    p.kappa_A = 1e-4;
    p.kappa_A_prime = 0.0;
    const double alpha = 50.0;
    const double expected = 4.0 * std::sqrt(p.kappa_L * p.kappa_A) * alpha;  // = 2
    const auto gen = build_reduced_atom(p, cd(alpha));
    const auto rho0 = DensityMatrix::from_pure(StateVector::basis(SpaceSpec::qubit(), kGround));
    std::vector<double> t, pe;
    integrate(gen, rho0, TimeGrid{0.0, 20.0, 0.002, 5}, [&](double time, const DensityMatrix& r) {
      t.push_back(time);
      pe.push_back(excitation_probability(r));
    });
    CHECK(estimate_rabi_frequency(t, pe) == doctest::Approx(expected).epsilon(0.01));
  }
}

TEST_CASE("alpha_of_t") {
  ModelParams p;
  p.kappa_L = 0.7;
  SUBCASE("free decay") {
    p.initial_field = CoherentField{cd(1.0, 2.0)};
    for (double t : {0.0, 0.5, 3.0}) CHECK(std::abs(alpha_of_t(p, t) - cd(1.0, 2.0) * std::exp(-0.7 * t)) <= 1e-15);
  }
  SUBCASE("constant drive from vacuum") {
    p.drive = DriveSpec(ConstantDrive{cd(0.4, 0.1)});
    for (double t : {0.1, 1.0, 4.0}) {
      CHECK(std::abs(alpha_of_t(p, t) - cd(0.4, 0.1) * (1.0 - std::exp(-0.7 * t))) <= 1e-14);
    }
  }
  SUBCASE("rectangular pulse matches adaptive quadrature") {
    const cd lambda(1.3, -0.6);
    p.drive = DriveSpec(RectPulseDrive{lambda, 0.8, 2.5});
    p.initial_field = CoherentField{cd(0.2, 0.0)};
    for (double t : {0.5, 1.0, 2.5, 3.7, 6.0}) {
      const auto kernel = [&](double tp) {
        return (tp >= 0.8 && tp < 2.5) ? 0.7 * std::exp(0.7 * (tp - t)) : 0.0;
      };
      // Split at the discontinuities so Simpson converges to 1e-12.
      double integral = 0.0;
      const double cuts[] = {0.0, std::min(0.8, t), std::min(2.5, t), t};
      for (int i = 0; i < 3; ++i) {
        if (cuts[i + 1] > cuts[i]) integral += simpson(kernel, cuts[i], cuts[i + 1], 1e-13);
      }
      const cd expected = 0.2 * std::exp(-0.7 * t) + lambda * integral;
      CHECK(std::abs(alpha_of_t(p, t) - expected) <= 1e-10);
    }
  }
  SUBCASE("Gaussian pulse matches the erf closed form") {
    const cd peak(0.9, 0.4);
    const double tc = 2.0, w = 0.6, k = 0.7;
    p.drive = DriveSpec(GaussianDrive{peak, tc, w});
    for (double t : {0.5, 2.0, 4.0, 8.0}) {
      // k int_0^t e^{k(t'-t)} e^{-(t'-tc)^2/2w^2} dt'
      const double shift = tc + k * w * w;
      const double pref = k * std::exp(k * (tc - t) + 0.5 * k * k * w * w) * w * std::sqrt(M_PI / 2.0);
      const double integral =
          pref * (std::erf((t - shift) / (std::sqrt(2.0) * w)) - std::erf((0.0 - shift) / (std::sqrt(2.0) * w)));
      CHECK(std::abs(alpha_of_t(p, t) - peak * integral) <= 1e-10);
    }
  }
  SUBCASE("satisfies d alpha/dt = kL (lambda - alpha)") {
    for (const auto& drive : {DriveSpec(ConstantDrive{cd(1.0, 0.5)}),
                              DriveSpec(GaussianDrive{cd(2.0, 0.0), 3.0, 1.0}),
                              DriveSpec(RectPulseDrive{cd(0.0, 1.0), 1.0, 4.0})}) {
      p.drive = drive;
      p.initial_field = CoherentField{cd(0.3, -0.3)};
      const double h = 1e-4;
      for (double t : {0.35, 1.7, 2.9, 5.2}) {
        const cd derivative = (alpha_of_t(p, t + h) - alpha_of_t(p, t - h)) / (2.0 * h);
        CHECK(std::abs(derivative - p.kappa_L * (p.drive(t) - alpha_of_t(p, t))) <= 1e-6);
      }
    }
  }
}

TEST_CASE("cascaded model with a decoupled atom reproduces the laser master equation") {
  ModelParams p;
  p.kappa_L = 1.0;
  p.drive = DriveSpec(GaussianDrive{cd(1.0, 0.5), 1.5, 0.8});
  p.initial_field = CoherentField{cd(0.3, 0.0)};
  const std::size_t n = 14;
  const auto full = build_cascaded(p, n);
  const auto laser = build_laser(p, n);
  const auto field0 = initial_field_state(p, n);
  const auto joint0 = tensor(field0, StateVector::basis(SpaceSpec::qubit(), kGround));
  const TimeGrid grid{0.0, 4.0, 0.005, 40};
  const auto a = integrate(full, DensityMatrix::from_pure(joint0), grid);
  const auto b = integrate(laser, DensityMatrix::from_pure(field0), grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const CMatrix marginal = partial_trace(a[i].rho, Subsystem::kLaser).matrix();
    worst = std::max(worst, (marginal - b[i].rho.matrix()).cwiseAbs().maxCoeff());
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("parameter validation") {
  ModelParams p;
  p.kappa_A = -0.1;
  CHECK_THROWS_AS(build_cascaded(p, 4), SimulationError);
  p.kappa_A = 0.1;
  p.drive = DriveSpec(GaussianDrive{1.0, 0.0, 0.0});
  CHECK_THROWS_AS(build_laser(p, 4), SimulationError);
  CHECK_THROWS_AS(alpha_for_rabi(2.0, 1.0, 0.0), SimulationError);

  const auto fig2a = steady_drive_params(0.04, 2.0, 1.0);
  CHECK(fig2a.kappa_A == doctest::Approx(0.02));
  CHECK(fig2a.gamma() == doctest::Approx(1.0));
  const double alpha = std::abs(std::get<CoherentField>(fig2a.initial_field).alpha0);
  CHECK(alpha == doctest::Approx(2.0 / (4.0 * std::sqrt(0.02))));
  CHECK(alpha * alpha == doctest::Approx(12.5));
  CHECK(default_truncation(fig2a) == 44);
}
