#include "logsplit/splitting.hpp"

#include <cmath>
#include <string>

#include "logsplit/errors.hpp"
#include "logsplit/nonlinear.hpp"
#include "logsplit/transform.hpp"

namespace logsplit {

void SolverConfig::validate() const {
  NonlinParams{lambda, eps}.validate();
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw ConfigError("tau must be positive and finite");
  if (!(T > 0.0) || !std::isfinite(T))
    throw ConfigError("T must be positive and finite");
  if (N < 1)
    throw ConfigError("N must be a positive integer");
  if (oversample < 1)
    throw ConfigError("oversampling factor q must be >= 1");
  if (dim < 1 || dim > kMaxDim)
    throw ConfigError("dimension out of range");
  if (mass_stride < 1)
    throw ConfigError("mass stride must be >= 1");
  (void)step_count();
  (void)snapshot_steps();
}

long SolverConfig::step_count() const {
  const double ratio = T / tau;
  const double m = std::round(ratio);
  if (std::abs(ratio - m) > 1e-9 * std::max(1.0, ratio) || m < 1.0)
    throw ConfigError("T/tau = " + std::to_string(ratio) +
                      " is not an integer number of steps");
  return static_cast<long>(m);
}

std::vector<long> SolverConfig::snapshot_steps() const {
  const long M = step_count();
  std::vector<long> steps;
  steps.reserve(snapshot_times.size());
  for (double t : snapshot_times) {
    if (!(t > 0.0) || t > T * (1.0 + 1e-12))
      throw ConfigError("snapshot time " + std::to_string(t) + " is outside (0, T]");
    const long m = std::lround(t / tau);
    if (m < 1 || m > M || std::abs(t - static_cast<double>(m) * tau) > 0.5 * tau)
      throw ConfigError("snapshot time " + std::to_string(t) +
                        " does not map onto a step");
    if (!steps.empty() && m <= steps.back())
      throw ConfigError("snapshot times must map to strictly increasing steps");
    steps.push_back(m);
  }
  return steps;
}

const Snapshot &Trajectory::at(double t) const {
  for (const Snapshot &s : snapshots)
    if (std::abs(s.time - t) <= 0.5 * config.tau)
      return s;
  throw ConfigError("trajectory has no snapshot at t = " + std::to_string(t));
}

Stepper::Stepper(const SolverConfig &config)
    : config_(config),
      grid_(TorusGrid::oversampled(config.dim, config.N, config.oversample)),
      work_(grid_) {
  config_.validate();
  const SpectralField shape(config_.dim, config_.N);
  multipliers_.resize(shape.size());
  for (std::size_t f = 0; f < shape.size(); ++f)
    multipliers_[f] =
        std::polar(1.0, -static_cast<double>(shape.wavenumber_squared(f)) * config_.tau);
}

SolverState Stepper::init(const InitialData &u0) const {
  if (u0.dim != config_.dim)
    throw ConfigError("initial data dimension does not match the solver");
  SolverState s;
  if (u0.has_coefficients()) {
    s.coeffs = resize(*u0.coeffs, config_.N);
  } else if (u0.evaluator) {
    PhysicalField u(grid_);
    const int M = grid_.nodes_per_dim();
    std::array<double, kMaxDim> x{};
    for (std::size_t flat = 0; flat < u.size(); ++flat) {
      std::size_t rest = flat;
      for (int i = config_.dim - 1; i >= 0; --i) {
        x[i] = grid_.node(static_cast<int>(rest % static_cast<std::size_t>(M)));
        rest /= static_cast<std::size_t>(M);
      }
      u[flat] = u0.evaluator(std::span<const double>(x.data(), config_.dim));
    }
    s.coeffs = forward(u, config_.N);
  } else {
    throw ConfigError("initial data has neither coefficients nor an evaluator");
  }
  s.coeffs.require_finite();
  s.mass = l2_norm(s.coeffs);
  return s;
}

void Stepper::step(SolverState &state) {
  FourierTransform &fft = transform_for(grid_.dim(), grid_.nodes_per_dim());
  auto values = work_.values();
  fft.synthesize(state.coeffs, values);
  if (config_.eps > 0.0)
    apply_phi_B_eps(values, config_.lambda, config_.tau, config_.eps);
  else
    apply_phi_B(values, config_.lambda, config_.tau);
  for (std::size_t j = 0; j < values.size(); ++j)
    if (!std::isfinite(values[j].real()) || !std::isfinite(values[j].imag()))
      throw NumericalAbort("non-finite value after the nonlinear flow",
                           state.step_index + 1, j);
  fft.forward(values, state.coeffs);
  auto c = state.coeffs.coeffs();
  for (std::size_t f = 0; f < c.size(); ++f)
    c[f] *= multipliers_[f];
  ++state.step_index;
  state.mass = l2_norm(state.coeffs);
}

SolverState init(const InitialData &u0, const SolverConfig &config) {
  return Stepper(config).init(u0);
}

SolverState step(const SolverState &state, const SolverConfig &config) {
  Stepper stepper(config);
  SolverState next = state;
  stepper.step(next);
  return next;
}

Trajectory run(const InitialData &u0, const SolverConfig &config) {
  Stepper stepper(config);
  Trajectory traj;
  traj.config = config;
  const long M = config.step_count();
  const std::vector<long> snaps = config.snapshot_steps();

  SolverState s = stepper.init(u0);
  traj.mass_trace.push_back({0, 0.0, s.mass});
  std::size_t next = 0;
  while (s.step_index < M) {
    stepper.step(s);
    if (s.step_index % config.mass_stride == 0 || s.step_index == M)
      traj.mass_trace.push_back(
          {s.step_index, static_cast<double>(s.step_index) * config.tau, s.mass});
    while (next < snaps.size() && snaps[next] == s.step_index) {
      traj.snapshots.push_back(
          {static_cast<double>(s.step_index) * config.tau, s.step_index, s.coeffs});
      ++next;
    }
  }
  return traj;
}

} // namespace logsplit
