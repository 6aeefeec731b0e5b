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
#include <numbers>

#include "cascade/error.hpp"
#include "cascade/hilbert/algebra.hpp"
#include "test_support.hpp"

using namespace cascade;

namespace {

// Independent Poisson-series evaluation of <alpha|a|alpha> over N levels with
// the same renormalization: sum_n c_n c_{n+1} sqrt(n+1) / sum_n c_n^2 for real alpha.
double coherent_mean_a_oracle(double alpha, std::size_t n_trunc) {
  double num = 0.0, den = 0.0;
  for (std::size_t n = 0; n < n_trunc; ++n) {
    const double cn = std::exp(-0.5 * alpha * alpha + double(n) * std::log(alpha) -
                               0.5 * std::lgamma(double(n) + 1.0));
    den += cn * cn;
    if (n + 1 < n_trunc) {
      const double cn1 = std::exp(-0.5 * alpha * alpha + double(n + 1) * std::log(alpha) -
                                  0.5 * std::lgamma(double(n) + 2.0));
      num += cn * cn1 * std::sqrt(double(n + 1));
    }
  }
  return num / den;
}

double binary_entropy(double p) { return -p * std::log(p) - (1.0 - p) * std::log(1.0 - p); }

// Schmidt probabilities through a full SVD of the N x 2 coefficient matrix.
double svd_entropy(const StateVector& psi) {
  const auto n = static_cast<Eigen::Index>(psi.space().fock_dim());
  Eigen::MatrixXcd c(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    c(i, 0) = psi.amplitudes()(2 * i);
    c(i, 1) = psi.amplitudes()(2 * i + 1);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(c);
  double s = 0.0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    const double p = svd.singularValues()(k) * svd.singularValues()(k);
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

}  // namespace

TEST_CASE("fock_annihilation") {
  const Operator a = fock_annihilation(3);
  CHECK(a.at(0, 1) == cd(1.0));
  CHECK(std::abs(a.at(1, 2) - std::sqrt(2.0)) < 1e-15);
  CHECK(a.nnz() == 2);
  const auto vac = StateVector::basis(SpaceSpec::fock(3), 0);
  CHECK(a.apply(vac.amplitudes()).norm() == 0.0);
  CHECK_THROWS_AS(fock_annihilation(1), SimulationError);

  const auto alpha = coherent_state(1.5, 25);
  const cd mean_a = expectation(fock_annihilation(25), alpha.state);
  CHECK(std::abs(mean_a - 1.5) <= 1e-8);
  CHECK(std::abs(mean_a.real() - coherent_mean_a_oracle(1.5, 25)) <= 1e-12);
}

TEST_CASE("qubit ladder operators") {
  const Operator sm = qubit_lowering();
  const auto g = StateVector::basis(SpaceSpec::qubit(), kGround);
  const auto e = StateVector::basis(SpaceSpec::qubit(), kExcited);
  CHECK((sm.apply(e.amplitudes()) - g.amplitudes()).norm() == 0.0);
  CHECK(sm.apply(g.amplitudes()).norm() == 0.0);
  const Operator proj = qubit_raising() * sm;
  CHECK(proj.at(kExcited, kExcited) == cd(1.0));
  CHECK(proj.nnz() == 1);
  CHECK(qubit_raising().max_abs_diff(sm.adjoint()) == 0.0);
}

TEST_CASE("coherent_state") {
  SUBCASE("alpha = 0 is the vacuum") {
    const auto c = coherent_state(0.0, 5);
    CHECK((c.state.amplitudes() - StateVector::basis(SpaceSpec::fock(5), 0).amplitudes()).norm() == 0.0);
    CHECK(c.tail_weight == 0.0);
  }
  SUBCASE("alpha = 2, N = 30") {
    const auto c = coherent_state(2.0, 30);
    CHECK(std::abs(c.raw_norm2 - 1.0) <= 1e-10);
    // Poisson tail sum_{n>=30} e^-4 4^n / n! by direct summation.
    double tail = 0.0;
    for (int n = 30; n < 80; ++n) tail += std::exp(-4.0 + n * std::log(4.0) - std::lgamma(n + 1.0));
    CHECK(c.tail_weight == doctest::Approx(tail).epsilon(1e-10));
    CHECK(c.state.is_normalized());
    CHECK_FALSE(c.warning.has_value());
    const CVector residual = fock_annihilation(30).apply(c.state.amplitudes()) - 2.0 * c.state.amplitudes();
    CHECK(residual.norm() <= 1e-6);
    const cd n_mean = expectation(fock_number(30), c.state);
    CHECK(std::abs(n_mean - 4.0) <= 1e-6);
  }
  SUBCASE("inadequate truncation carries the tail weight") {
    const auto c = coherent_state(3.0, 12);
    REQUIRE(c.warning.has_value());
    CHECK(c.warning->find("tail weight") != std::string::npos);
    CHECK(c.tail_weight > 1e-3);
    CHECK(recommended_truncation(3.0) == 37);
  }
  SUBCASE("eigen-residual decreases monotonically with N") {
    for (double alpha : {0.7, 1.5, 3.0}) {
      double previous = INFINITY;
      for (std::size_t n = 4; n <= 40; ++n) {
        const auto c = coherent_state(alpha, n);
        const double r =
            (fock_annihilation(n).apply(c.state.amplitudes()) - alpha * c.state.amplitudes()).norm();
        CHECK(r <= previous);
        previous = r;
      }
    }
  }
}

TEST_CASE("tensor products") {
  std::mt19937_64 rng(3);
  const Operator a = fock_annihilation(4);
  const Operator sp = qubit_raising();
  const Operator ab = tensor(a, sp);
  CHECK(ab.dim() == 8);
  CHECK((on_laser(a) * on_atom(sp, 4)).max_abs_diff(ab) == 0.0);

  const auto in = StateVector::composite_basis(4, 1, kGround);
  const auto out = StateVector::composite_basis(4, 0, kExcited);
  CHECK((ab.apply(in.amplitudes()) - out.amplitudes()).norm() == 0.0);

  CHECK_THROWS_AS(tensor(sp, a), SimulationError);
  CHECK_THROWS_AS(tensor(on_laser(a), sp), SimulationError);

  // adjoint(A (x) B) == adjoint(A) (x) adjoint(B)
  for (int trial = 0; trial < 20; ++trial) {
    const Operator la = testing::random_sparse(SpaceSpec::fock(2 + trial % 6), 0.5, rng);
    const Operator qb = testing::random_sparse(SpaceSpec::qubit(), 0.7, rng);
    CHECK(tensor(la, qb).adjoint().max_abs_diff(tensor(la.adjoint(), qb.adjoint())) == 0.0);
    CHECK(la.adjoint().adjoint().max_abs_diff(la) == 0.0);
  }
}

TEST_CASE("partial_trace") {
  std::mt19937_64 rng(17);
  SUBCASE("product states factor") {
    const auto rl = testing::random_density(SpaceSpec::fock(5), rng);
    const auto ra = testing::random_density(SpaceSpec::qubit(), rng);
    CMatrix kron(10, 10);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) kron.block(2 * i, 2 * j, 2, 2) = rl.matrix()(i, j) * ra.matrix();
    const DensityMatrix joint(SpaceSpec::composite(5), kron);
    CHECK((partial_trace(joint, Subsystem::kLaser).matrix() - rl.matrix()).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((partial_trace(joint, Subsystem::kAtom).matrix() - ra.matrix()).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("Bell-like state gives I/2 on the atom") {
    CVector v = CVector::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    const auto rho = DensityMatrix::from_pure(StateVector(SpaceSpec::composite(2), v, true));
    const CMatrix atom = partial_trace(rho, Subsystem::kAtom).matrix();
    CHECK((atom - 0.5 * CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-15);
  }
  SUBCASE("pure product state has pure marginals") {
    const auto psi = tensor(coherent_state(1.2, 12).state, StateVector::basis(SpaceSpec::qubit(), kExcited));
    const auto rho = DensityMatrix::from_pure(psi);
    CHECK(std::abs(partial_trace(rho, Subsystem::kLaser).purity() - 1.0) <= 1e-10);
  }
  SUBCASE("trace is preserved for random Hermitian inputs") {
    for (int trial = 0; trial < 25; ++trial) {
      const std::size_t n = 2 + trial % 9;
      const CMatrix h = testing::random_hermitian(2 * n, rng);
      const DensityMatrix m(SpaceSpec::composite(n), h);
      for (auto keep : {Subsystem::kLaser, Subsystem::kAtom}) {
        CHECK(std::abs(partial_trace(m, keep).trace() - m.trace()) <= 1e-12);
      }
    }
  }
  SUBCASE("non-composite input is rejected") {
    CHECK_THROWS_AS(partial_trace(testing::random_density(SpaceSpec::fock(3), rng), Subsystem::kAtom),
                    SimulationError);
  }
}

TEST_CASE("schmidt_entropy") {
  std::mt19937_64 rng(23);
  const auto plus = StateVector::basis(SpaceSpec::qubit(), kExcited);
  CHECK(schmidt_entropy(tensor(coherent_state(1.5, 20).state, plus)) <= 1e-10);

  CVector bell = CVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(schmidt_entropy(StateVector(SpaceSpec::composite(2), bell, true)) - std::numbers::ln2) <=
        1e-12);

  SUBCASE("Fock-jump state with kappa_L = kappa_A, n = 1") {
    // sqrt(2 kL n)|n-1,+> + sqrt(2 kA)|n,->, normalized.
    const double kl = 0.7, ka = 0.7;
    CVector v = CVector::Zero(6);
    v(0 * 2 + 1) = std::sqrt(2.0 * kl);
    v(1 * 2 + 0) = std::sqrt(2.0 * ka);
    const StateVector psi(SpaceSpec::composite(3), v / v.norm(), true);
    CHECK(std::abs(schmidt_entropy(psi) - std::numbers::ln2) <= 1e-10);
    CHECK(std::abs(svd_entropy(psi) - std::numbers::ln2) <= 1e-10);
  }
  SUBCASE("agrees with the eigensolver route and the SVD oracle") {
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 2 + trial % 11;
      const auto psi = testing::random_state(SpaceSpec::composite(n), rng);
      const double s = schmidt_entropy(psi);
      const double vn = von_neumann_entropy(partial_trace(DensityMatrix::from_pure(psi), Subsystem::kAtom));
      const double vn_field =
          von_neumann_entropy(partial_trace(DensityMatrix::from_pure(psi), Subsystem::kLaser));
      CHECK(std::abs(s - vn) <= 1e-8);
      CHECK(std::abs(s - vn_field) <= 1e-8);
      CHECK(std::abs(s - svd_entropy(psi)) <= 1e-10);
      CHECK(s >= 0.0);
      CHECK(s <= std::numbers::ln2);
    }
  }
  SUBCASE("binary entropy for general kappa and n") {
    for (std::size_t n : {1, 2, 5}) {
      const double kl = 0.3, ka = 1.1;
      CVector v = CVector::Zero(2 * 8);
      v(2 * (n - 1) + 1) = std::sqrt(2.0 * kl * double(n));
      v(2 * n) = std::sqrt(2.0 * ka);
      const StateVector psi(SpaceSpec::composite(8), v / v.norm(), true);
      const double p = kl * double(n) / (kl * double(n) + ka);
      CHECK(std::abs(schmidt_entropy(psi) - binary_entropy(p)) <= 1e-10);
    }
  }
  SUBCASE("unnormalized input is rejected") {
    CVector v = CVector::Zero(4);
    v(0) = 2.0;
    CHECK_THROWS_AS(schmidt_entropy(StateVector(SpaceSpec::composite(2), v, false)), SimulationError);
  }
}

TEST_CASE("expectation") {
  std::mt19937_64 rng(31);
  const auto vac = StateVector::basis(SpaceSpec::fock(6), 0);
  CHECK(expectation(fock_number(6), vac) == cd(0.0));
  const auto c = coherent_state(2.0, 30);
  CHECK(std::abs(expectation(fock_number(30), c.state) - 4.0) <= 1e-6);
  CHECK(std::abs(expectation(fock_number(30), DensityMatrix::from_pure(c.state)) - 4.0) <= 1e-6);

  for (int trial = 0; trial < 10; ++trial) {
    const auto space = SpaceSpec::composite(4);
    const Operator h = Operator::from_dense(space, testing::random_hermitian(8, rng));
    CHECK(std::abs(expectation(h, testing::random_state(space, rng)).imag()) <= 1e-12);
    CHECK(std::abs(expectation(h, testing::random_density(space, rng)).imag()) <= 1e-12);
  }
  CHECK_THROWS_AS(expectation(fock_number(5), vac), SimulationError);
}

TEST_CASE("state and density invariants") {
  std::mt19937_64 rng(41);
  CVector v = CVector::Ones(3);
  CHECK_THROWS_AS(StateVector(SpaceSpec::fock(3), v, true), SimulationError);
  CHECK_NOTHROW(StateVector(SpaceSpec::fock(3), v, false));
  CHECK_THROWS_AS(StateVector(SpaceSpec::fock(3), CVector::Zero(3), false), SimulationError);
  CHECK_THROWS_AS(StateVector(SpaceSpec::fock(3), CVector::Ones(4), false), SimulationError);

  const auto rho = testing::random_density(SpaceSpec::composite(3), rng);
  CHECK(rho.invariants().ok());
  CHECK_NOTHROW(rho.validate());
  CMatrix bad = rho.matrix();
  bad(0, 0) += 0.5;
  bad(1, 1) -= 0.5 + rho.matrix()(1, 1).real();
  CHECK_THROWS_AS(DensityMatrix(rho.space(), bad).validate(), SimulationError);
}
