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

#include "cascade/trajectory/trajectory.hpp"

#include <cmath>

#include <fmt/format.h>

#include "cascade/analysis/observables.hpp"
#include "cascade/error.hpp"
#include "cascade/hilbert/algebra.hpp"
#include "cascade/trajectory/rng.hpp"

namespace cascade {

namespace {

constexpr cd kMinusI{0.0, -1.0};
constexpr double kNormGrowthTolerance = 1e-12;

std::size_t size_of(const CVector& v) { return static_cast<std::size_t>(v.size()); }

// RK4 for d psi/dt = -i H_B(t) psi with reusable buffers. Either a fixed H_B
// or a generator (static part plus drive terms) supplies the operator.
class NoJumpPropagator {
 public:
  NoJumpPropagator(const Generator* gen, const Operator* fixed_hb, std::size_t dim)
      : gen_(gen), fixed_(fixed_hb), k_(kernels::active()) {
    for (auto* v : {&k1_, &k2_, &k3_, &k4_, &stage_}) v->resize(static_cast<Eigen::Index>(dim));
  }

  // Advances psi in place by dt from t. Returns |psi(t + dt)|^2.
  double step(CVector& psi, double t, double dt, double max_rate) {
    const double n0 = k_.norm2(size_of(psi), psi.data());
    const auto st = stage_times(t, dt);
    derivative(psi, st.start, k1_);
    const double rate = -2.0 * k_.dotc(size_of(psi), psi.data(), k1_.data()).real() / n0;
    if (rate * dt > max_rate) {
      throw SimulationError(
          ErrorCode::kStepSize,
          fmt::format("norm decay rate {:.4g} times dt {:.3g} exceeds {:.3g}", rate, dt, max_rate));
    }
    stage_ = psi + (0.5 * dt) * k1_;
    derivative(stage_, st.mid, k2_);
    stage_ = psi + (0.5 * dt) * k2_;
    derivative(stage_, st.mid, k3_);
    stage_ = psi + dt * k3_;
    derivative(stage_, st.end, k4_);
    psi += (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
    const double n1 = k_.norm2(size_of(psi), psi.data());
    if (!std::isfinite(n1) || n1 > n0 * (1.0 + kNormGrowthTolerance)) {
      throw SimulationError(ErrorCode::kStepSize,
                            fmt::format("no-jump step increased |psi|^2 from {:.17g} to {:.17g} "
                                        "(dt={:.3g}); reduce the step size",
                                        n0, n1, dt));
    }
    return n1;
  }

 private:
  void derivative(const CVector& x, double t, CVector& out) {
    if (fixed_) {
      k_.csr_matvec(fixed_->view(), kMinusI, x.data(), out.data(), false);
      return;
    }
    k_.csr_matvec(gen_->nonhermitian_static().view(), kMinusI, x.data(), out.data(), false);
    for (const auto& term : gen_->drive_terms()) {
      k_.csr_matvec(term.op.view(), kMinusI * term.coefficient(t), x.data(), out.data(), true);
    }
  }

  const Generator* gen_;
  const Operator* fixed_;
  const kernels::KernelTable& k_;
  CVector k1_, k2_, k3_, k4_, stage_;
};

double pe_of(const StateVector& psi) {
  return psi.space().kind() == SpaceKind::kFock ? 0.0 : excitation_probability(psi);
}

double entropy_of(const StateVector& psi) {
  return psi.space().kind() == SpaceKind::kComposite ? schmidt_entropy(psi) : 0.0;
}

}  // namespace

Operator nonhermitian_hamiltonian(const Generator& gen, double t) {
  Operator hb = gen.nonhermitian_static();
  for (const auto& term : gen.drive_terms()) hb = hb + term.coefficient(t) * term.op;
  return hb;
}

StateVector nojump_step(const StateVector& psi, const Operator& h_b, double dt, double max_rate) {
  require_same_space(psi.space(), h_b.space(), "nojump_step");
  NoJumpPropagator prop(nullptr, &h_b, psi.space().dim());
  CVector v = psi.amplitudes();
  prop.step(v, 0.0, dt, max_rate);
  return {psi.space(), std::move(v), false};
}

StateVector nojump_step(const StateVector& psi, const Generator& gen, double t, double dt,
                        double max_rate) {
  require_same_space(psi.space(), gen.space(), "nojump_step");
  NoJumpPropagator prop(&gen, nullptr, psi.space().dim());
  CVector v = psi.amplitudes();
  prop.step(v, t, dt, max_rate);
  return {psi.space(), std::move(v), false};
}

std::vector<JumpProbability> jump_probabilities(const StateVector& psi,
                                                const std::vector<JumpChannel>& channels, double dt,
                                                double max_total) {
  const double n2 = psi.norm2();
  if (std::abs(n2 - 1.0) > kNormTolerance) {
    throw SimulationError(ErrorCode::kNotNormalized,
                          fmt::format("jump_probabilities on |psi|^2 = {:.17g}", n2));
  }
  std::vector<JumpProbability> out;
  double total = 0.0;
  for (const auto& c : channels) {
    require_same_space(psi.space(), c.op.space(), "jump_probabilities");
    const double p = c.op.apply(psi.amplitudes()).squaredNorm() * dt;
    out.push_back({c.label, p});
    total += p;
  }
  if (total > max_total) {
    throw SimulationError(ErrorCode::kStepSize,
                          fmt::format("total jump probability {:.4g} per step exceeds {:.3g}; "
                                      "reduce dt (currently {:.3g})",
                                      total, max_total, dt));
  }
  return out;
}

StateVector apply_jump(const StateVector& psi, const JumpChannel& channel) {
  require_same_space(psi.space(), channel.op.space(), "apply_jump");
  CVector v = channel.op.apply(psi.amplitudes());
  const double n2 = v.squaredNorm();
  if (!(n2 > 0.0)) {
    throw SimulationError(ErrorCode::kImpossibleJump,
                          fmt::format("{} jump maps the state to zero", to_string(channel.label)));
  }
  v /= std::sqrt(n2);
  return {psi.space(), std::move(v), true};
}

TrajectoryRecord run_trajectory(const Generator& gen, const StateVector& psi0, const TimeGrid& grid,
                                std::uint64_t seed, const TrajectoryOptions& options) {
  require_same_space(gen.space(), psi0.space(), "run_trajectory");
  grid.validate();
  const auto& k = kernels::active();
  const auto& channels = gen.channels();
  const std::size_t dim = gen.space().dim();
  const double dt = grid.dt;

  TrajectoryRecord rec;
  rec.seed = seed;
  rec.samples.reserve(grid.sample_count());

  UniformStream rng(seed);
  NoJumpPropagator prop(&gen, nullptr, dim);
  CVector psi = psi0.amplitudes() / std::sqrt(psi0.norm2());
  std::vector<CVector> images(channels.size(), CVector(static_cast<Eigen::Index>(dim)));
  std::vector<double> weights(channels.size());
  double last_norm2 = 1.0;

  const auto state = [&] { return StateVector(gen.space(), psi, true); };
  const auto sample = [&](std::size_t step) {
    const StateVector s = state();
    const double t = grid.time(step);
    rec.samples.push_back({t, pe_of(s), options.record_entropy ? entropy_of(s) : 0.0, last_norm2});
    if (options.observer) options.observer(t, s);
  };

  // Jump through channel chosen by the draw u in [0, total): cumulative
  // weights, ties at a boundary go to the earlier (Forward) channel.
  const auto jump = [&](double t_event, double u) {
    std::size_t chosen = channels.size();
    double cumulative = 0.0;
    for (std::size_t c = 0; c < channels.size(); ++c) {
      if (weights[c] <= 0.0) continue;
      cumulative += weights[c];
      if (u <= cumulative) {
        chosen = c;
        break;
      }
    }
    if (chosen == channels.size()) {
      for (std::size_t c = channels.size(); c-- > 0;) {
        if (weights[c] > 0.0) {
          chosen = c;
          break;
        }
      }
    }
    if (chosen == channels.size()) {
      throw SimulationError(ErrorCode::kImpossibleJump, "jump requested with all channel rates zero");
    }
    const StateVector before = state();
    const double n2 = images[chosen].squaredNorm();
    if (!(n2 > 0.0)) {
      throw SimulationError(ErrorCode::kImpossibleJump,
                            fmt::format("{} jump maps the state to zero", to_string(channels[chosen].label)));
    }
    psi = images[chosen] / std::sqrt(n2);
    last_norm2 = n2;
    const StateVector after = state();
    rec.events.push_back({t_event, channels[chosen].label, pe_of(before), pe_of(after),
                          options.record_entropy ? entropy_of(after) : 0.0});
  };

  const auto compute_images = [&] {
    double total = 0.0;
    for (std::size_t c = 0; c < channels.size(); ++c) {
      k.csr_matvec(channels[c].op.view(), 1.0, psi.data(), images[c].data(), false);
      weights[c] = k.norm2(dim, images[c].data());
      total += weights[c];
    }
    return total;
  };

  sample(0);
  const std::size_t steps = grid.steps();

  if (options.scheme == JumpScheme::kBernoulli) {
    for (std::size_t step = 0; step < steps; ++step) {
      const double t = grid.time(step);
      const double total_p = compute_images() * dt;
      if (total_p > options.max_jump_probability) {
        throw SimulationError(ErrorCode::kStepSize,
                              fmt::format("total jump probability {:.4g} per step exceeds {:.3g} at "
                                          "t={:.6g}; reduce dt (currently {:.3g})",
                                          total_p, options.max_jump_probability, t, dt));
      }
      const double r = rng.next();
      if (r < total_p) jump(t + dt, r / dt);
      // The drift is applied on jump steps too, so no step loses its
      // Hamiltonian evolution.
      const double n2 = prop.step(psi, t, dt, options.max_step_rate);
      psi /= std::sqrt(n2);
      if (!(r < total_p)) last_norm2 = n2;
      if ((step + 1) % grid.sample_stride == 0) sample(step + 1);
    }
  } else {
    double threshold = rng.next();
    for (std::size_t step = 0; step < steps; ++step) {
      const double t = grid.time(step);
      last_norm2 = prop.step(psi, t, dt, options.max_step_rate);
      psi /= std::sqrt(last_norm2);
      if (last_norm2 <= threshold) {
        const double total = compute_images();
        jump(t + dt, rng.next() * total);
        threshold = rng.next();
      } else {
        threshold /= last_norm2;
      }
      if ((step + 1) % grid.sample_stride == 0) sample(step + 1);
    }
  }
  return rec;
}

}  // namespace cascade
