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

#include "cascade/hilbert/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <fmt/format.h>

#include "cascade/error.hpp"

namespace cascade {

Operator fock_annihilation(std::size_t n_trunc) {
  const auto space = SpaceSpec::fock(n_trunc);
  std::vector<Triplet> t;
  for (std::size_t n = 1; n < n_trunc; ++n) t.push_back({n - 1, n, std::sqrt(double(n))});
  return Operator(space, t);
}

Operator fock_number(std::size_t n_trunc) {
  const auto space = SpaceSpec::fock(n_trunc);
  std::vector<Triplet> t;
  for (std::size_t n = 1; n < n_trunc; ++n) t.push_back({n, n, double(n)});
  return Operator(space, t);
}

Operator qubit_lowering() {
  const Triplet t[] = {{kGround, kExcited, 1.0}};
  return Operator(SpaceSpec::qubit(), t);
}

Operator qubit_raising() {
  const Triplet t[] = {{kExcited, kGround, 1.0}};
  return Operator(SpaceSpec::qubit(), t);
}

std::size_t recommended_truncation(cd alpha) {
  const double a = std::abs(alpha);
  return static_cast<std::size_t>(std::ceil(a * a + 6.0 * a + 10.0));
}

namespace {

// sum_{n >= n0} e^{-mean} mean^n / n!, summed directly to avoid cancellation.
double poisson_tail(double mean, std::size_t n0) {
  if (mean == 0.0) return n0 == 0 ? 1.0 : 0.0;
  double log_term = -mean + double(n0) * std::log(mean) - std::lgamma(double(n0) + 1.0);
  double term = std::exp(log_term);
  double sum = 0.0;
  for (std::size_t n = n0;; ++n) {
    sum += term;
    term *= mean / double(n + 1);
    if (double(n) > mean && term <= sum * 1e-17) break;
    if (term == 0.0 && double(n) > mean) break;
  }
  return sum;
}

}  // namespace

CoherentState coherent_state(cd alpha, std::size_t n_trunc) {
  const auto space = SpaceSpec::fock(n_trunc);
  const double mean = std::norm(alpha);
  CVector c(static_cast<Eigen::Index>(n_trunc));
  c(0) = std::exp(-0.5 * mean);
  for (std::size_t n = 1; n < n_trunc; ++n) {
    c(static_cast<Eigen::Index>(n)) = c(static_cast<Eigen::Index>(n - 1)) * alpha / std::sqrt(double(n));
  }
  CoherentState out{StateVector(space, c / c.norm(), true), poisson_tail(mean, n_trunc),
                    c.squaredNorm(), std::nullopt};
  if (n_trunc < recommended_truncation(alpha)) {
    out.warning = fmt::format(
        "truncation N={} below recommended {} for |alpha|={:.6g}; discarded tail weight {:.3e}",
        n_trunc, recommended_truncation(alpha), std::abs(alpha), out.tail_weight);
  }
  return out;
}

Operator tensor(const Operator& laser, const Operator& atom) {
  if (laser.space().kind() != SpaceKind::kFock || atom.space().kind() != SpaceKind::kQubit) {
    throw SimulationError(ErrorCode::kSpaceMismatch,
                          fmt::format("tensor expects Fock x Qubit, got {} x {}",
                                      laser.space().to_string(), atom.space().to_string()));
  }
  std::vector<Triplet> t;
  for (const auto& l : laser.triplets()) {
    for (const auto& a : atom.triplets()) {
      t.push_back({l.row * kAtomDim + a.row, l.col * kAtomDim + a.col, l.value * a.value});
    }
  }
  return Operator(SpaceSpec::composite(laser.space().fock_dim()), t);
}

StateVector tensor(const StateVector& laser, const StateVector& atom) {
  if (laser.space().kind() != SpaceKind::kFock || atom.space().kind() != SpaceKind::kQubit) {
    throw SimulationError(ErrorCode::kSpaceMismatch, "tensor expects Fock x Qubit states");
  }
  const auto n = laser.amplitudes().size();
  CVector v(n * static_cast<Eigen::Index>(kAtomDim));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index s = 0; s < Eigen::Index(kAtomDim); ++s) {
      v(i * Eigen::Index(kAtomDim) + s) = laser.amplitudes()(i) * atom.amplitudes()(s);
    }
  }
  const auto space = SpaceSpec::composite(laser.space().fock_dim());
  const bool normalized = laser.is_normalized() && atom.is_normalized();
  return {space, std::move(v), normalized};
}

Operator on_laser(const Operator& laser) {
  return tensor(laser, Operator::identity(SpaceSpec::qubit()));
}

Operator on_atom(const Operator& atom, std::size_t n_trunc) {
  return tensor(Operator::identity(SpaceSpec::fock(n_trunc)), atom);
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
  if (rho.space().kind() != SpaceKind::kComposite) {
    throw SimulationError(ErrorCode::kSpaceMismatch, "partial_trace requires a composite space");
  }
  const auto nf = static_cast<Eigen::Index>(rho.space().fock_dim());
  const auto na = static_cast<Eigen::Index>(kAtomDim);
  const CMatrix& m = rho.matrix();
  if (keep == Subsystem::kAtom) {
    CMatrix out = CMatrix::Zero(na, na);
    for (Eigen::Index n = 0; n < nf; ++n) out += m.block(n * na, n * na, na, na);
    return {SpaceSpec::qubit(), std::move(out)};
  }
  CMatrix out = CMatrix::Zero(nf, nf);
  for (Eigen::Index i = 0; i < nf; ++i) {
    for (Eigen::Index j = 0; j < nf; ++j) {
      cd acc{};
      for (Eigen::Index s = 0; s < na; ++s) acc += m(i * na + s, j * na + s);
      out(i, j) = acc;
    }
  }
  return {SpaceSpec::fock(rho.space().fock_dim()), std::move(out)};
}

namespace {

double entropy_of(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

}  // namespace

double schmidt_entropy(const StateVector& psi) {
  if (psi.space().kind() != SpaceKind::kComposite) {
    throw SimulationError(ErrorCode::kSpaceMismatch, "schmidt_entropy requires a composite space");
  }
  const double n2 = psi.norm2();
  if (std::abs(n2 - 1.0) > kNormTolerance) {
    throw SimulationError(ErrorCode::kNotNormalized,
                          fmt::format("schmidt_entropy on |psi|^2 = {:.17g}", n2));
  }
  // The squared Schmidt coefficients are the eigenvalues of the 2x2 Gram
  // matrix G = C^dagger C of the (n, s) coefficient matrix C.
  const auto& c = psi.amplitudes();
  double g00 = 0.0;
  double g11 = 0.0;
  cd g01{};
  for (Eigen::Index n = 0; n < c.size(); n += 2) {
    g00 += std::norm(c(n));
    g11 += std::norm(c(n + 1));
    g01 += std::conj(c(n)) * c(n + 1);
  }
  const double tr = g00 + g11;
  const double half_gap = std::hypot(0.5 * (g00 - g11), std::abs(g01));
  const double large = 0.5 * tr + half_gap;
  const double det = std::max(0.0, g00 * g11 - std::norm(g01));
  const double small = large > 0.0 ? det / large : 0.0;
  const double p[] = {large / tr, small / tr};
  return std::clamp(entropy_of(p), 0.0, std::numbers::ln2);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const Eigen::MatrixXcd herm = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
  std::vector<double> p(solver.eigenvalues().data(),
                        solver.eigenvalues().data() + solver.eigenvalues().size());
  const double tr = rho.trace().real();
  for (auto& v : p) v = std::max(0.0, v / tr);
  return entropy_of(p);
}

cd expectation(const Operator& a, const StateVector& psi) {
  require_same_space(a.space(), psi.space(), "expectation");
  const CVector av = a.apply(psi.amplitudes());
  return psi.amplitudes().dot(av) / psi.norm2();
}

cd expectation(const Operator& a, const DensityMatrix& rho) {
  require_same_space(a.space(), rho.space(), "expectation");
  const auto v = a.view();
  const CMatrix& m = rho.matrix();
  cd acc{};
  for (std::size_t r = 0; r < v.rows; ++r) {
    for (auto k = v.row_ptr[r]; k < v.row_ptr[r + 1]; ++k) {
      acc += v.values[k] * m(v.col_idx[k], static_cast<Eigen::Index>(r));
    }
  }
  return acc;
}

}  // namespace cascade
