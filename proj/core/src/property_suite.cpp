#include "logsplit/property_suite.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "logsplit/nonlinear.hpp"
#include "logsplit/propagator.hpp"
#include "logsplit/spectral.hpp"

namespace logsplit {

namespace {

class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * unit(); }
  double log_uniform(double lo_exp, double hi_exp) {
    return std::pow(10.0, uniform(lo_exp, hi_exp));
  }
  int integer(int lo, int hi) {
    return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  cplx polar(double r) { return std::polar(r, uniform(-std::numbers::pi, std::numbers::pi)); }

  /// Uniform in the disk of radius 10 half the time, log-uniform modulus otherwise.
  cplx point() {
    if (rng_() & 1u)
      return polar(10.0 * std::sqrt(unit()));
    return polar(log_uniform(-8.0, 1.0));
  }

  double coupling() {
    const double mag = log_uniform(-1.0, 1.5);
    return (rng_() & 1u) ? mag : -mag;
  }

  /// Decaying random coefficients, amplitude spread over four decades.
  SpectralField field(int cutoff) {
    SpectralField f(1, cutoff);
    const double decay = uniform(0.5, 2.0);
    const double amp = log_uniform(-3.0, 1.0);
    for (int k = -cutoff; k <= cutoff; ++k)
      f(k) = amp * cplx(uniform(-1, 1), uniform(-1, 1)) *
             std::pow(1.0 + std::abs(k), -decay);
    return f;
  }

private:
  std::mt19937_64 rng_;
};

std::string show(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << '(' << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
  return os.str();
}

class Tracker {
public:
  explicit Tracker(std::string name) { r_.inequality = std::move(name); }

  template <class Describe> void record(const Inequality &q, Describe &&describe) {
    ++r_.samples;
    if (!q.holds())
      ++r_.violations;
    const double m = q.margin();
    if (r_.samples == 1 || m < r_.worst_margin) {
      r_.worst_margin = m;
      r_.worst_input = describe();
    }
  }

  PropertyResult take() {
    if (r_.samples == 0)
      r_.worst_margin = 0.0;
    return std::move(r_);
  }

private:
  PropertyResult r_;
};

} // namespace

bool PropertySuiteReport::passed() const noexcept { return first_failure() == nullptr; }

const PropertyResult *PropertySuiteReport::first_failure() const noexcept {
  for (const PropertyResult &r : results)
    if (r.violations > 0)
      return &r;
  return nullptr;
}

PropertySuiteReport property_suite(std::uint64_t seed, const PropertyCounts &counts,
                                   bool inject_fault) {
  const auto start = std::chrono::steady_clock::now();
  Sampler rng(seed);
  PropertySuiteReport report;

  // ----------------------------------------------------------- scalar pairs
  Tracker gap("f_eps_gap"), holder_reg("holder_f_eps"), holder_unreg("holder_f"),
      ch("ch_monotonicity"), pair("phi_B_pointwise"), eps_gap("phi_B_eps_gap");
  const double eps_choices[2] = {1e-3, 1e-1};
  for (long i = 0; i < counts.scalar_pairs; ++i) {
    const cplx z1 = rng.point();
    const cplx z2 = (i % 4 == 0) ? z1 + rng.polar(rng.log_uniform(-10.0, -1.0))
                                 : rng.point();
    const double eps = eps_choices[i % 2];
    const double lambda = rng.coupling();
    const double t = rng.uniform(0.0, 1.0);
    const auto both = [&] { return "z1=" + show(z1) + " z2=" + show(z2) +
                                   " eps=" + std::to_string(eps); };

    Inequality g = regularization_gap_check(z1, eps);
    if (inject_fault)
      g.rhs *= 0.5;
    gap.record(g, [&] { return "z=" + show(z1) + " eps=" + std::to_string(eps); });
    const HolderPairReport h = holder_pair_check(z1, z2, eps);
    holder_reg.record(h.regularized, both);
    holder_unreg.record(h.unregularized, both);
    ch.record(ch_monotonicity_check(z1, z2), both);
    const auto flow = [&] { return "a=" + show(z1) + " b=" + show(z2) +
                                   " lambda=" + std::to_string(lambda) +
                                   " t=" + std::to_string(t); };
    pair.record(phi_B_pair_check(z1, z2, lambda, t), flow);
    eps_gap.record(phi_B_eps_gap_check(z1, lambda, t, eps), flow);
  }

  // Directed corner cases: moduli at the bottom of the double range.
  Tracker corner("corner_batch");
  if (counts.scalar_pairs > 0) {
    const double moduli[] = {1e-300, 1e-15, 0.0, 1.0, 10.0};
    const double eps = 1e-3;
    for (double r1 : {1e-300, 1e-15})
      for (double r2 : moduli)
        for (int rep = 0; rep < 8; ++rep) {
          const cplx z1 = rng.polar(r1);
          const cplx z2 = rng.polar(r2);
          const double lambda = rng.coupling();
          const double t = rng.uniform(0.0, 1.0);
          const auto desc = [&] { return "z1=" + show(z1) + " z2=" + show(z2); };
          Inequality g = regularization_gap_check(z1, eps);
          if (inject_fault)
            g.rhs *= 0.5;
          corner.record(g, desc);
          const HolderPairReport h = holder_pair_check(z1, z2, eps);
          corner.record(h.regularized, desc);
          corner.record(h.unregularized, desc);
          corner.record(ch_monotonicity_check(z1, z2), desc);
          corner.record(phi_B_pair_check(z1, z2, lambda, t), desc);
          corner.record(phi_B_eps_gap_check(z1, lambda, t, eps), desc);
        }
  }

  // ------------------------------------------------------------------ fields
  Tracker lip("phi_B_l2_lipschitz"), nodes("phi_B_node_pairs"),
      grad("phi_B_eps_gradient"), l2reg("log_l2_f_eps"), l2unreg("log_l2_f"),
      hs0("log_hs_stability_s0"), hs1("log_hs_stability_s1"), inv("inverse_inequality"),
      proj_err0("projection_error_mu0"), proj_err_half("projection_error_mu_half"),
      proj_contr("projection_contraction");
  for (long i = 0; i < counts.fields; ++i) {
    const int n = rng.integer(4, 16);
    const SpectralField u = rng.field(n);
    const SpectralField v = rng.field(n);
    const double lambda = rng.coupling();
    const double t = rng.uniform(0.0, 1.0);
    const double eps = rng.log_uniform(-4.0, -0.5);
    const auto desc = [&] {
      return "field #" + std::to_string(i) + " N=" + std::to_string(n) +
             " lambda=" + std::to_string(lambda) + " t=" + std::to_string(t) +
             " eps=" + std::to_string(eps);
    };

    const PhysicalField uv = synthesize(u, 8);
    const PhysicalField vv = synthesize(v, 8);
    lip.record(phi_B_l2_lipschitz_check(uv, vv, lambda, t), desc);
    nodes.record(phi_B_node_pair_check(uv, lambda, t), desc);
    grad.record(phi_B_eps_gradient_check(u, lambda, t, eps, 8), desc);
    const LogL2Report l2 = log_l2_stability_check(uv, vv, eps);
    l2reg.record(l2.regularized, desc);
    l2unreg.record(l2.unregularized, desc);
    hs0.record(log_hs_stability_check(u, eps, 0, 8), desc);
    hs1.record(log_hs_stability_check(u, eps, 1, 8), desc);

    const SpectralField w = rng.field(rng.integer(1, 32));
    const InverseInequalityReport ir = inverse_inequality_check(w, 8);
    inv.record({ir.linf, ir.bound}, desc);

    const SpectralField full = rng.field(64);
    const int cut = rng.integer(1, 63);
    const double s = rng.uniform(0.05, 2.0);
    const SpectralField tail = difference(full, project(full, cut));
    const double hs = hs_seminorm(full, s);
    const double nc = static_cast<double>(cut);
    proj_err0.record({l2_norm(tail), std::pow(nc, -s) * hs}, desc);
    proj_err_half.record({hs_seminorm(tail, 0.5 * s), std::pow(nc, -0.5 * s) * hs}, desc);
    proj_contr.record({hs_seminorm(project(full, cut), s), hs}, desc);
  }

  // ------------------------------------------------------- free-flow bounds
  Tracker upper("theorem21_upper"), lower("theorem21_lower");
  for (long i = 0; i < counts.theorem21; ++i) {
    const SpectralField v0 = rng.field(64);
    const double r = rng.uniform(0.0, 2.0);
    const double t = rng.log_uniform(-3.0, -0.01);
    const Theorem21Report up = theorem21_experiment(v0, r, t, 0.1);
    upper.record({up.err, up.upper}, [&] {
      return "r=" + std::to_string(r) + " t=" + std::to_string(t);
    });

    const double tl = (i % 2 == 0) ? 1e-3 : 1e-2;
    const Kc0Set set = build_kc0(0.1, tl, 200);
    SpectralField w(1, 200);
    for (const WaveVector &k : set.members)
      w(k[0]) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const double rl = rng.uniform(0.0, 2.0);
    const Theorem21Report lo = theorem21_experiment(w, rl, tl, 0.1);
    lower.record({lo.lower, lo.err}, [&] {
      return "r=" + std::to_string(rl) + " t=" + std::to_string(tl);
    });
    upper.record({lo.err, lo.upper}, [&] {
      return "Kc0 data r=" + std::to_string(rl) + " t=" + std::to_string(tl);
    });
  }

  for (Tracker *tr : {&gap, &holder_reg, &holder_unreg, &ch, &pair, &eps_gap, &corner,
                      &lip, &nodes, &grad, &l2reg, &l2unreg, &hs0, &hs1, &inv,
                      &proj_err0, &proj_err_half, &proj_contr, &upper, &lower})
    report.results.push_back(tr->take());

  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                       .count();
  return report;
}

void write_props_csv(std::ostream &out, const PropertySuiteReport &report) {
  out << "inequality,samples,worst_margin\n";
  const auto old = out.precision(17);
  for (const PropertyResult &r : report.results)
    out << r.inequality << ',' << r.samples << ',' << r.worst_margin << '\n';
  out.precision(old);
}

} // namespace logsplit
