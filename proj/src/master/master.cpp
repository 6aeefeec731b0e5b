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

#include "cascade/master/master.hpp"

#include <cmath>

#include <fmt/format.h>

#include "cascade/error.hpp"

namespace cascade {

void TimeGrid::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw SimulationError(ErrorCode::kInvalidArgument, fmt::format("dt must be > 0, got {}", dt));
  }
  if (!(t_end > t_start)) {
    throw SimulationError(ErrorCode::kInvalidArgument, "t_end must exceed t_start");
  }
  if ((t_end - t_start) / dt < 1.0 - 1e-9) {
    throw SimulationError(ErrorCode::kInvalidArgument, "grid spans less than one step");
  }
  if (sample_stride == 0) {
    throw SimulationError(ErrorCode::kInvalidArgument, "sample_stride must be positive");
  }
}

std::size_t TimeGrid::steps() const {
  return static_cast<std::size_t>(std::llround((t_end - t_start) / dt));
}

std::vector<double> TimeGrid::sample_times() const {
  std::vector<double> out;
  for (std::size_t k = 0; k <= steps(); k += sample_stride) out.push_back(time(k));
  return out;
}

namespace {

constexpr cd kMinusI{0.0, -1.0};

struct RhsWorkspace {
  CMatrix y;
  CMatrix z;
  CMatrix w;
};

void rhs_into(const Generator& gen, const CMatrix& rho, double t, CMatrix& out, RhsWorkspace& ws) {
  const auto& k = kernels::active();
  const auto d = rho.rows();
  const auto n = static_cast<std::size_t>(d);
  ws.y.resize(d, d);
  k.csr_matmul(gen.nonhermitian_static().view(), kMinusI, rho.data(), n, ws.y.data(), false);
  for (const auto& term : gen.drive_terms()) {
    k.csr_matmul(term.op.view(), kMinusI * term.coefficient(t), rho.data(), n, ws.y.data(), true);
  }
  out = ws.y + ws.y.adjoint();
  for (const auto& c : gen.channels()) {
    if (c.op.nnz() == 0) continue;
    ws.z.resize(d, d);
    k.csr_matmul(c.op.view(), 1.0, rho.data(), n, ws.z.data(), false);
    ws.w = ws.z.adjoint();
    k.csr_matmul(c.op.view(), 1.0, ws.w.data(), n, out.data(), true);
  }
}

void check_positivity(const DensityMatrix& rho, double t, double dt, double tol) {
  const double min_eig = rho.invariants().min_eigenvalue;
  if (min_eig < -tol) {
    throw SimulationError(
        ErrorCode::kPositivityViolation,
        fmt::format("minimum eigenvalue {:.3e} at t={:.6g} with dt={:.3g}; reduce the step size",
                    min_eig, t, dt));
  }
}

}  // namespace

CMatrix lindblad_rhs(const Generator& gen, const DensityMatrix& rho, double t) {
  require_same_space(gen.space(), rho.space(), "lindblad_rhs");
  CMatrix out;
  RhsWorkspace ws;
  rhs_into(gen, rho.matrix(), t, out, ws);
  return out;
}

void integrate(const Generator& gen, const DensityMatrix& rho0, const TimeGrid& grid,
               const MasterObserver& observer, const IntegrateOptions& options) {
  require_same_space(gen.space(), rho0.space(), "integrate");
  grid.validate();
  const double dt = grid.dt;
  const std::size_t steps = grid.steps();

  CMatrix rho = rho0.matrix();
  CMatrix k1, k2, k3, k4, stage;
  RhsWorkspace ws;

  const auto emit = [&](std::size_t step) {
    DensityMatrix sample(gen.space(), rho);
    if (options.check_positivity) check_positivity(sample, grid.time(step), dt, options.positivity_tol);
    if (observer) observer(grid.time(step), sample);
  };

  emit(0);
  for (std::size_t step = 0; step < steps; ++step) {
    const double t = grid.time(step);
    const auto st = stage_times(t, dt);
    rhs_into(gen, rho, st.start, k1, ws);
    stage = rho + (0.5 * dt) * k1;
    rhs_into(gen, stage, st.mid, k2, ws);
    stage = rho + (0.5 * dt) * k2;
    rhs_into(gen, stage, st.mid, k3, ws);
    stage = rho + dt * k3;
    rhs_into(gen, stage, st.end, k4, ws);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    stage = 0.5 * (rho + rho.adjoint());
    rho = stage / stage.trace().real();
    if (!rho.allFinite()) {
      throw SimulationError(ErrorCode::kStepSize,
                            fmt::format("non-finite density matrix at t={:.6g}, dt={:.3g}", t + dt, dt));
    }
    if ((step + 1) % grid.sample_stride == 0) emit(step + 1);
  }
}

std::vector<MasterSample> integrate(const Generator& gen, const DensityMatrix& rho0,
                                    const TimeGrid& grid, const IntegrateOptions& options) {
  grid.validate();
  std::vector<MasterSample> out;
  out.reserve(grid.sample_count());
  integrate(
      gen, rho0, grid, [&](double t, const DensityMatrix& rho) { out.push_back({t, rho}); }, options);
  return out;
}

DensityMatrix steady_state(const Generator& gen, double tol, const SteadyStateOptions& options) {
  if (!gen.time_independent()) {
    throw SimulationError(ErrorCode::kInvalidArgument, "steady_state needs a time-independent generator");
  }
  const auto d = static_cast<Eigen::Index>(gen.space().dim());
  CMatrix start = CMatrix::Zero(d, d);
  start(0, 0) = 1.0;
  DensityMatrix rho(gen.space(), start);

  const double chunk = options.dt * double(options.check_every);
  double t = 0.0;
  double residual = lindblad_rhs(gen, rho, t).cwiseAbs().maxCoeff();
  while (residual >= tol) {
    if (t >= options.horizon) {
      throw SimulationError(
          ErrorCode::kNonConvergence,
          fmt::format("steady state not reached by t={:.6g}: max |drho/dt| = {:.3e} >= {:.3e}", t,
                      residual, tol));
    }
    TimeGrid grid{t, t + chunk, options.dt, options.check_every};
    DensityMatrix last = rho;
    IntegrateOptions io;
    io.check_positivity = false;
    integrate(gen, rho, grid, [&](double, const DensityMatrix& r) { last = r; }, io);
    rho = last;
    t += chunk;
    residual = lindblad_rhs(gen, rho, t).cwiseAbs().maxCoeff();
  }
  rho.validate();
  return rho;
}

}  // namespace cascade
