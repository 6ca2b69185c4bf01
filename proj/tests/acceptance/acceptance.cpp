// Desk-scale acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <logsplit/harness.hpp>
#include <logsplit/initdata.hpp>
#include <logsplit/property_suite.hpp>
#include <logsplit/propagator.hpp>

using namespace logsplit;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char *f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<double> dyadic(int from, int to) {
  std::vector<double> out;
  for (int j = from; j <= to; ++j)
    out.push_back(std::ldexp(1.0, -j));
  return out;
}

int worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 6u));
}

/// Sweep result kept for the mass criterion.
struct SweepRecord {
  std::string name;
  bool gausson = false;
  ErrorTable table;
  double seconds = 0.0;
};

Outcome slopes_within(const ErrorTable &t, double lo, double hi) {
  Outcome o{true, "slopes"};
  for (const OrderFit &f : t.orders) {
    o.detail += fmt(" %.3f", f.slope);
    o.pass = o.pass && f.slope >= lo && f.slope <= hi;
  }
  o.pass = o.pass && t.orders.size() == 3;
  return o;
}

SweepSpec rough_spec() {
  SweepSpec sp;
  sp.taus = dyadic(7, 12);
  sp.coupling = Coupling::InverseSqrt;
  sp.reference = ReferenceMode::Numeric;
  sp.tau_ref = 0x1.0p-16;
  sp.N_ref = 256;
  sp.lambda = -1.0;
  sp.workers = worker_count();
  return sp;
}

SweepRecord rough_sweep(const std::string &name, const InitialData &u0) {
  const auto t0 = Clock::now();
  SweepRecord r{name, false, run_sweep(u0, rough_spec()), 0.0};
  r.seconds = seconds_since(t0);
  return r;
}

} // namespace

int main() {
  std::vector<std::pair<int, Outcome>> results;
  auto report = [&](int id, const std::string &title, Outcome o) {
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << "  " << title
              << ": " << o.detail << std::endl;
    results.emplace_back(id, std::move(o));
  };
  std::vector<SweepRecord> sweeps;

  // 1. Gausson, fixed N = 200, single worker, exact solution.
  {
    SweepSpec sp;
    sp.taus = dyadic(7, 13);
    sp.coupling = Coupling::Fixed;
    sp.fixed_N = 200;
    sp.reference = ReferenceMode::ExactGausson;
    sp.lambda = -16.0;
    sp.workers = 1;
    const auto t0 = Clock::now();
    SweepRecord rec{"gausson", true, run_sweep(make_gausson(GaussonParams{}), sp), 0.0};
    rec.seconds = seconds_since(t0);
    Outcome o = slopes_within(rec.table, 0.9, 1.1);
    o.detail += fmt(", %.1f s", rec.seconds);
    o.pass = o.pass && rec.seconds < 60.0;
    report(1, "Gausson first order", o);
    sweeps.push_back(std::move(rec));
  }

  // 2. Random H^0.8 data.
  {
    SweepRecord rec = rough_sweep("example1", make_random_hs({0.8, 0.51, 100000, 42}));
    Outcome o = slopes_within(rec.table, 0.28, 0.52);
    o.detail += fmt(", %.1f s", rec.seconds);
    o.pass = o.pass && rec.seconds < 600.0;
    report(2, "random H^0.8 data", o);
    sweeps.push_back(std::move(rec));
  }

  // 3. |x|^0.3 e^{2ix}, normalised in H^{0.8}.
  {
    SweepRecord rec = rough_sweep("example2", make_power_singular({0.3, 2}, 4096, 0.8));
    Outcome o = slopes_within(rec.table, 0.28, 0.52);
    o.detail += fmt(", %.1f s", rec.seconds);
    o.pass = o.pass && rec.seconds < 600.0;
    report(3, "|x|^0.3 power data", o);
    sweeps.push_back(std::move(rec));
  }

  // 4. H^1 data: random s = 1 and |x|^0.5 e^{2ix}.
  {
    SweepRecord a = rough_sweep("example3", make_random_hs({1.0, 0.51, 100000, 42}));
    SweepRecord b = rough_sweep("example4", make_power_singular({0.5, 2}, 4096, 1.0));
    Outcome oa = slopes_within(a.table, 0.40, 0.60);
    Outcome ob = slopes_within(b.table, 0.40, 0.60);
    Outcome o{oa.pass && ob.pass && a.seconds < 600.0 && b.seconds < 600.0,
              "random s=1 " + oa.detail + fmt(" (%.1f s)", a.seconds) + "; |x|^0.5 " +
                  ob.detail + fmt(" (%.1f s)", b.seconds)};
    report(4, "H^1 data", o);
    sweeps.push_back(std::move(a));
    sweeps.push_back(std::move(b));
  }

  // 5. Mass over every run above, including the numeric references.
  {
    Outcome o{true, ""};
    double gausson_drift = 0.0, rough_drift = 0.0;
    int runs = 0;
    for (const SweepRecord &s : sweeps) {
      std::vector<MassReport> reps;
      for (const RunMass &m : s.table.masses)
        reps.push_back(m.report);
      if (s.table.reference_mass)
        reps.push_back(*s.table.reference_mass);
      for (const MassReport &m : reps) {
        ++runs;
        o.pass = o.pass && m.monotone_ok;
        (s.gausson ? gausson_drift : rough_drift) =
            std::max(s.gausson ? gausson_drift : rough_drift, m.max_rel_drift);
      }
    }
    o.pass = o.pass && gausson_drift <= 1e-8 && rough_drift <= 1e-4;
    o.detail = std::to_string(runs) + " runs monotone=" + (o.pass ? "yes" : "check") +
               fmt(", Gausson drift %.2e", gausson_drift) +
               fmt(", rough drift %.2e", rough_drift);
    report(5, "mass non-increase and drift", o);
  }

  // 6. Randomised inequality suite at the default counts.
  {
    const PropertySuiteReport r = property_suite(20240901, PropertyCounts{});
    Outcome o{r.passed() && r.seconds < 30.0, ""};
    long samples = 0;
    for (const PropertyResult &p : r.results)
      samples += p.samples;
    o.detail = std::to_string(r.results.size()) + " inequalities, " +
               std::to_string(samples) + " samples" + fmt(", %.1f s", r.seconds);
    if (const PropertyResult *bad = r.first_failure())
      o.detail += ", violated: " + bad->inequality + " at " + bad->worst_input;
    report(6, "property suites", o);
  }

  // 7. Free-flow optimality, independent draws.
  {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0), r01(0.0, 1.0);
    int upper_ok = 0, lower_ok = 0;
    for (int i = 0; i < 100; ++i) {
      SpectralField v(1, 128);
      for (int k = -128; k <= 128; ++k)
        v(k) = cplx(u(gen), u(gen)) / std::pow(1.0 + std::abs(k), 1.0 + r01(gen));
      const double r = 2.0 * r01(gen);
      const double t = std::pow(10.0, -3.0 + 3.0 * r01(gen));
      if (theorem21_experiment(v, r, t, 0.1).holds_upper)
        ++upper_ok;
    }
    for (int i = 0; i < 100; ++i) {
      const double t = std::pow(10.0, -3.0 + 2.0 * r01(gen));
      const Kc0Set set = build_kc0(0.1, t, 256);
      SpectralField v(1, 256);
      for (const WaveVector &k : set.members)
        v(k[0]) = cplx(u(gen), u(gen));
      const Theorem21Report rep = theorem21_experiment(v, 2.0 * r01(gen), t, 0.1);
      if (!set.empty() && rep.holds_lower && rep.holds_upper)
        ++lower_ok;
    }
    const double window = sinc_inverse(0.1) - std::asin(0.1);
    Outcome o{upper_ok == 100 && lower_ok == 100 && std::abs(window - 2.75) <= 0.01,
              "upper " + std::to_string(upper_ok) + "/100, lower " +
                  std::to_string(lower_ok) + "/100" + fmt(", window %.5f", window)};
    report(7, "free-flow optimality", o);
  }

  // 8. Gausson boundary value and PDE residual.
  {
    const GaussonParams p;
    const double left = std::abs(gausson_exact(p, -std::numbers::pi, 0.0));
    const double right = std::abs(gausson_exact(p, std::numbers::pi, 0.0));
    double residual = 0.0;
    for (double t : {0.0, 0.4, 0.7, 1.0})
      residual = std::max(residual, gausson_residual(p, 200, t));
    const auto near = [](double v) { return std::abs(v / 5.1e-35 - 1.0) <= 0.1; };
    Outcome o{near(left) && near(right) && residual <= 1e-10,
              fmt("|u0(-pi)| = %.4e", left) + fmt(", |u0(pi)| = %.4e", right) +
                  fmt(", residual %.2e", residual)};
    report(8, "Gausson boundary value and residual", o);
  }

  // 9. Gagliardo bound for |x|^0.3 at s = 0.2.
  {
    const GagliardoBoundReport r = gagliardo_bound_check({0.3, 0}, 0.2, 1024);
    const double closed = std::pow(2.0 * std::numbers::pi, 1.2) / 0.12;
    Outcome o{r.value <= closed && r.rel_error <= 1e-6,
              fmt("value %.6f", r.value) + fmt(" <= %.6f", closed) +
                  fmt(", self-consistency %.1e", r.rel_error)};
    report(9, "Gagliardo bound", o);
  }

  int failed = 0;
  for (const auto &[id, o] : results)
    failed += o.pass ? 0 : 1;
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " failing")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
