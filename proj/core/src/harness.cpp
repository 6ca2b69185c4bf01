#include "logsplit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <mutex>
#include <thread>

#include "logsplit/checksum.hpp"
#include "logsplit/errors.hpp"
#include "logsplit/trajectory_io.hpp"

namespace logsplit {

namespace {

std::string cache_key(const InitialData &u0, const SolverConfig &cfg) {
  std::string text = config_fingerprint(cfg);
  for (const auto &[k, v] : u0.describe())
    text += "|" + k + "=" + v;
  if (u0.coeffs) {
    auto c = u0.coeffs->coeffs();
    text += "|" + sha256_hex(std::as_bytes(c));
  }
  return sha256_hex(std::string_view(text));
}

} // namespace

// ---------------------------------------------------------------- SweepSpec

void SweepSpec::validate() const {
  if (taus.empty())
    throw ConfigError("sweep needs at least one tau");
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!(taus[i] > 0.0))
      throw ConfigError("sweep taus must be positive");
    if (i > 0 && !(taus[i] < taus[i - 1]))
      throw ConfigError("sweep taus must be strictly decreasing");
  }
  if (measure_times.empty())
    throw ConfigError("sweep needs at least one measure time");
  for (double t : measure_times)
    if (!(t > 0.0 && t <= T))
      throw ConfigError("measure time " + std::to_string(t) + " outside (0, T]");
  if (coupling == Coupling::Fixed && fixed_N < 1)
    throw ConfigError("fixed cutoff must be positive");
  if (workers < 1)
    throw ConfigError("worker count must be positive");
  if (reference == ReferenceMode::Numeric) {
    if (!(tau_ref > 0.0 && tau_ref < taus.back() / 8.0))
      throw ConfigError("reference step must satisfy tau_ref < min(taus)/8");
    if (N_ref < 1)
      throw ConfigError("reference cutoff must be positive");
    for (double tau : taus)
      if (cutoff_for(tau) > N_ref)
        throw ConfigError("reference cutoff N_ref is below a coarse cutoff");
  }
  for (double tau : taus)
    config_for(tau).validate();
}

int SweepSpec::cutoff_for(double tau) const {
  if (coupling == Coupling::Fixed)
    return fixed_N;
  return std::max(1, static_cast<int>(std::floor(1.0 / std::sqrt(tau) + 1e-9)));
}

SolverConfig SweepSpec::config_for(double tau) const {
  SolverConfig c;
  c.lambda = lambda;
  c.tau = tau;
  c.T = T;
  c.N = cutoff_for(tau);
  c.oversample = oversample;
  c.eps = eps;
  c.snapshot_times = measure_times;
  std::sort(c.snapshot_times.begin(), c.snapshot_times.end());
  return c;
}

SolverConfig SweepSpec::reference_config() const {
  SolverConfig c;
  c.lambda = lambda;
  c.tau = tau_ref;
  c.T = T;
  c.N = N_ref;
  c.oversample = oversample;
  c.eps = eps;
  std::vector<long> ref_steps;
  for (double tau : taus) {
    const SolverConfig coarse = config_for(tau);
    for (long m : coarse.snapshot_steps()) {
      const double ratio = static_cast<double>(m) * tau / tau_ref;
      const double r = std::round(ratio);
      if (std::abs(ratio - r) > 1e-9 * std::max(1.0, ratio))
        throw ConfigError("coarse step time is not a multiple of tau_ref");
      ref_steps.push_back(static_cast<long>(r));
    }
  }
  std::sort(ref_steps.begin(), ref_steps.end());
  ref_steps.erase(std::unique(ref_steps.begin(), ref_steps.end()), ref_steps.end());
  for (long m : ref_steps)
    c.snapshot_times.push_back(static_cast<double>(m) * tau_ref);
  return c;
}

// ---------------------------------------------------------------- reference

Trajectory reference_solution(const InitialData &u0, const SolverConfig &ref_config) {
  const char *env = std::getenv("LOGSPLIT_CACHE_DIR");
  if (env == nullptr || *env == '\0')
    return run(u0, ref_config);

  const std::filesystem::path dir =
      std::filesystem::path(env) / ("ref-" + cache_key(u0, ref_config));
  if (std::filesystem::exists(dir / "manifest.json")) {
    try {
      Trajectory t = read_trajectory(dir);
      if (config_fingerprint(t.config) == config_fingerprint(ref_config))
        return t;
      std::cerr << "warning: reference cache " << dir << " has a different "
                << "configuration; recomputing\n";
    } catch (const Error &e) {
      std::cerr << "warning: reference cache " << dir << " unusable (" << e.what()
                << "); recomputing\n";
    }
  }
  Trajectory t = run(u0, ref_config);
  write_trajectory(dir, t, "reference");
  return t;
}

double error_against_reference(const Trajectory &coarse, const Trajectory &ref,
                               double t, double normalization) {
  if (!(normalization > 0.0))
    throw ConfigError("error normalisation must be positive");
  const Snapshot &c = coarse.at(t);
  // The reference is compared at the coarse step time, not the nominal t.
  const Snapshot &r = ref.at(c.time);
  if (c.field.cutoff() > r.field.cutoff())
    throw ConfigError("coarse cutoff exceeds the reference cutoff");
  return l2_norm(difference(r.field, c.field)) / normalization;
}

SpectralField gausson_coefficients(const GaussonParams &p, double t, int cutoff) {
  const TorusGrid grid = TorusGrid::oversampled(1, cutoff, 4);
  PhysicalField u(grid);
  for (int j = 0; j < grid.nodes_per_dim(); ++j)
    u[static_cast<std::size_t>(j)] = gausson_exact(p, grid.node(j), t);
  return forward(u, cutoff);
}

// ------------------------------------------------------------------ fitting

OrderFit fit_order(const std::vector<ErrorRow> &rows, double t) {
  OrderFit fit;
  fit.t = t;
  std::vector<std::pair<double, double>> pts;
  for (const ErrorRow &r : rows) {
    if (std::abs(r.t - t) > 1e-12)
      continue;
    if (!(r.err > 0.0)) {
      ++fit.excluded;
      continue;
    }
    pts.emplace_back(std::log(r.tau), std::log(r.err));
  }
  if (pts.size() < 3)
    throw ConfigError("order fit at t = " + std::to_string(t) +
                      " needs at least 3 rows with positive error");
  const double n = static_cast<double>(pts.size());
  double mx = 0.0, my = 0.0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (auto [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  fit.points = pts.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

MassReport mass_report(const Trajectory &traj) {
  MassReport r;
  const auto &m = traj.mass_trace;
  if (m.empty())
    return r;
  const double m0 = m.front().mass;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m0 > 0.0)
      r.max_rel_drift =
          std::max(r.max_rel_drift, std::abs(m[i].mass * m[i].mass / (m0 * m0) - 1.0));
    if (i == 0)
      continue;
    const double prev = m[i - 1].mass;
    const auto steps = static_cast<double>(std::max(1L, m[i].step - m[i - 1].step));
    if (prev > 0.0) {
      const double growth = (m[i].mass - prev) / prev / steps;
      r.worst_step_growth = std::max(r.worst_step_growth, growth);
    }
    if (m[i].mass > prev * (1.0 + 1e-12 * steps))
      r.monotone_ok = false;
  }
  return r;
}

// -------------------------------------------------------------------- sweep

ErrorTable run_sweep(const InitialData &u0, const SweepSpec &spec) {
  spec.validate();
  ErrorTable table;
  const bool exact = spec.reference == ReferenceMode::ExactGausson;
  if (exact && !std::holds_alternative<GaussonParams>(u0.params))
    throw ConfigError("exact reference requires Gausson data");
  table.normalization = exact ? 1.0 : u0.hs_norm;

  std::optional<Trajectory> ref;
  if (!exact) {
    ref = reference_solution(u0, spec.reference_config());
    table.reference_mass = mass_report(*ref);
  }

  struct Slot {
    std::vector<ErrorRow> rows;
    RunMass mass;
    Trajectory traj;
  };
  std::vector<Slot> slots(spec.taus.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= spec.taus.size())
        return;
      try {
        const SolverConfig cfg = spec.config_for(spec.taus[i]);
        const Trajectory traj = run(u0, cfg);
        const MassReport mr = mass_report(traj);
        slots[i].mass = {cfg.tau, cfg.N, mr};
        for (double t : spec.measure_times) {
          const Snapshot &snap = traj.at(t);
          double err = 0.0;
          if (exact) {
            const auto &gp = std::get<GaussonParams>(u0.params);
            const int cut = std::max(256, cfg.N);
            err = l2_norm(difference(gausson_coefficients(gp, snap.time, cut), snap.field));
          } else {
            err = error_against_reference(traj, *ref, t, table.normalization);
          }
          slots[i].rows.push_back({cfg.tau, cfg.N, t, snap.time, err, mr.max_rel_drift});
        }
        if (i + 1 == spec.taus.size())
          slots[i].traj = traj;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure)
          failure = std::current_exception();
        return;
      }
    }
  };

  const std::size_t n_workers =
      std::min<std::size_t>(static_cast<std::size_t>(spec.workers), spec.taus.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < n_workers; ++w)
      pool.emplace_back(worker);
    worker();
  }
  if (failure)
    std::rethrow_exception(failure);

  for (Slot &s : slots) {
    table.masses.push_back(s.mass);
    for (ErrorRow &r : s.rows)
      table.rows.push_back(r);
  }
  table.finest = std::move(slots.back().traj);
  table.reference = std::move(ref);
  if (spec.taus.size() >= 3)
    for (double t : spec.measure_times)
      table.orders.push_back(fit_order(table.rows, t));
  return table;
}

void write_errors_csv(std::ostream &out, const ErrorTable &table) {
  out << "tau,N,t,err,mass_drift,t_m\n";
  const auto old = out.precision(17);
  for (const ErrorRow &r : table.rows)
    out << r.tau << ',' << r.N << ',' << r.t << ',' << r.err << ',' << r.mass_drift
        << ',' << r.t_m << '\n';
  out.precision(old);
}

void write_orders_csv(std::ostream &out, const ErrorTable &table) {
  out << "t,slope,intercept,r2\n";
  const auto old = out.precision(17);
  for (const OrderFit &f : table.orders)
    out << f.t << ',' << f.slope << ',' << f.intercept << ',' << f.r_squared << '\n';
  out.precision(old);
}

} // namespace logsplit
