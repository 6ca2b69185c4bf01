#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "logsplit/initdata.hpp"
#include "logsplit/splitting.hpp"

namespace logsplit {

enum class ReferenceMode { ExactGausson, Numeric };
enum class Coupling { InverseSqrt, Fixed };

struct SweepSpec {
  std::vector<double> taus;  // decreasing
  Coupling coupling = Coupling::InverseSqrt;
  int fixed_N = 200;         // used when coupling == Fixed
  std::vector<double> measure_times{0.4, 0.7, 1.0};
  ReferenceMode reference = ReferenceMode::Numeric;
  double tau_ref = 0x1.0p-16;
  int N_ref = 256;
  double lambda = -16.0;
  double T = 1.0;
  int oversample = 4;
  double eps = 0.0;
  int workers = 1;

  /// Throws ConfigError on an empty or unsorted τ list, measure times
  /// outside (0, T], or τ_ref >= min τ / 8.
  void validate() const;
  /// N = floor(1/√τ) or the fixed cutoff.
  int cutoff_for(double tau) const;
  /// Solver configuration of one sweep point; snapshots at the measure times.
  SolverConfig config_for(double tau) const;
  /// Reference configuration; snapshots at every coarse step time mτ.
  SolverConfig reference_config() const;
};

struct ErrorRow {
  double tau = 0.0;
  int N = 0;
  double t = 0.0;   // requested measure time
  double t_m = 0.0; // actual comparison time mτ
  double err = 0.0;
  double mass_drift = 0.0;
};

struct OrderFit {
  double t = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
  std::size_t excluded = 0; // rows with zero error
};

struct MassReport {
  double max_rel_drift = 0.0; // max |‖u_m‖²/‖u_0‖² - 1|
  double worst_step_growth = 0.0; // max (‖u_{m+1}‖ - ‖u_m‖)/‖u_m‖
  bool monotone_ok = true;    // non-increasing up to 1e-12 per step
};

struct RunMass {
  double tau = 0.0;
  int N = 0;
  MassReport report;
};

struct ErrorTable {
  std::vector<ErrorRow> rows;
  std::vector<OrderFit> orders;
  std::vector<RunMass> masses;
  double normalization = 1.0;
  std::optional<MassReport> reference_mass;
  /// Run at the smallest τ, and the numeric reference when one was used.
  Trajectory finest;
  std::optional<Trajectory> reference;
};

/// Reference trajectory for a numeric sweep. With LOGSPLIT_CACHE_DIR set the
/// result is stored under a key derived from the data and configuration and
/// reused; a damaged cache entry is recomputed with a warning on stderr.
Trajectory reference_solution(const InitialData &u0, const SolverConfig &ref_config);

/// ‖ref(t) - coarse(t)‖ / normalization, in coefficient space after zero padding.
double error_against_reference(const Trajectory &coarse, const Trajectory &ref,
                               double t, double normalization);

/// Exact Gausson coefficients at time t, cutoff `cutoff` (1D).
SpectralField gausson_coefficients(const GaussonParams &p, double t, int cutoff = 256);

/// Least squares of ln err against ln τ over the rows at measure time t.
/// Needs at least 3 rows with positive error.
OrderFit fit_order(const std::vector<ErrorRow> &rows, double t);

MassReport mass_report(const Trajectory &traj);

ErrorTable run_sweep(const InitialData &u0, const SweepSpec &spec);

/// Columns: tau, N, t, err, mass_drift, t_m.
void write_errors_csv(std::ostream &out, const ErrorTable &table);
/// Columns: t, slope, intercept, r2.
void write_orders_csv(std::ostream &out, const ErrorTable &table);

} // namespace logsplit
