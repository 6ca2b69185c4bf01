#pragma once

#include <vector>

#include "logsplit/initdata.hpp"
#include "logsplit/spectral.hpp"

namespace logsplit {

struct SolverConfig {
  double lambda = -16.0;
  double tau = 1e-3;
  double T = 1.0;
  int N = 64;
  int oversample = 4;
  double eps = 0.0; // > 0 selects the regularised nonlinear flow
  std::vector<double> snapshot_times;
  int dim = 1;
  /// Record the mass every `mass_stride` steps (the final step is always kept).
  int mass_stride = 1;

  /// Throws ConfigError naming the violated constraint.
  void validate() const;
  /// M = T/τ, which must be an integer to within 1e-9.
  long step_count() const;
  /// Nearest step index for each snapshot time (each within τ/2).
  std::vector<long> snapshot_steps() const;
};

struct SolverState {
  SpectralField coeffs;
  long step_index = 0;
  double mass = 0.0; // ‖u_N^m‖
};

struct Snapshot {
  double time = 0.0;
  long step = 0;
  SpectralField field;
};

struct MassSample {
  long step = 0;
  double time = 0.0;
  double mass = 0.0;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  std::vector<MassSample> mass_trace;
  SolverConfig config;

  /// Snapshot at time t (within τ/2); throws ConfigError naming t otherwise.
  const Snapshot &at(double t) const;
};

/// u_N^{m+1} = Φ_A^τ Π_N Φ_B^τ u_N^m with the nonlinear coefficients taken on
/// a q-times oversampled grid. Owns its FFT workspace; one instance per worker.
class Stepper {
public:
  explicit Stepper(const SolverConfig &config);

  const SolverConfig &config() const noexcept { return config_; }
  const TorusGrid &grid() const noexcept { return grid_; }

  /// Π_N u₀ (zero-padded when the explicit list is shorter than N).
  SolverState init(const InitialData &u0) const;

  /// One step in place. Throws NumericalAbort on a non-finite intermediate.
  void step(SolverState &state);

private:
  SolverConfig config_;
  TorusGrid grid_;
  std::vector<cplx> multipliers_; // e^{-i|k|²τ}
  PhysicalField work_;
};

SolverState init(const InitialData &u0, const SolverConfig &config);
SolverState step(const SolverState &state, const SolverConfig &config);
Trajectory run(const InitialData &u0, const SolverConfig &config);

} // namespace logsplit
