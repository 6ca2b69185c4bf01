#include "logsplit/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <string>

#include "logsplit/errors.hpp"

namespace logsplit {

SpectralField phi_A(const SpectralField &field, double t) {
  if (!std::isfinite(t))
    throw DomainError("phi_A: non-finite time");
  SpectralField out = field;
  auto c = out.coeffs();
  for (std::size_t f = 0; f < c.size(); ++f) {
    const long k2 = field.wavenumber_squared(f);
    if (k2 != 0)
      c[f] *= std::polar(1.0, -static_cast<double>(k2) * t);
  }
  return out;
}

double sinc_inverse(double c0) {
  const double s1 = std::sin(1.0);
  if (!(c0 > 0.0 && c0 < s1))
    throw DomainError("sinc_inverse needs 0 < c0 < sin 1, got " + std::to_string(c0));
  // sin(ξ)/ξ decreases strictly on (1, π) from sin 1 to 0.
  double lo = 1.0;
  double hi = std::numbers::pi;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (std::sin(mid) / mid > c0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

bool Kc0Set::contains(const WaveVector &k) const noexcept {
  return std::find(members.begin(), members.end(), k) != members.end();
}

Kc0Set build_kc0(double c0, double t, int kmax, int dim) {
  if (!(t > 0.0))
    throw DomainError("build_kc0 needs t > 0");
  if (dim < 1 || dim > kMaxDim)
    throw ConfigError("build_kc0: bad dimension");
  Kc0Set set;
  set.c0 = c0;
  set.t = t;
  set.dim = dim;
  set.upper = 2.0 / t * sinc_inverse(c0);
  set.lower = 2.0 / t * std::asin(c0);

  WaveVector k{};
  const auto visit = [&](auto &&self, int axis) -> void {
    if (axis == dim) {
      long k2 = 0;
      for (int i = 0; i < dim; ++i)
        k2 += static_cast<long>(k[i]) * k[i];
      const auto x = static_cast<double>(k2);
      if (k2 != 0 && x >= set.lower && x <= set.upper)
        set.members.push_back(k);
      return;
    }
    for (int v = -kmax; v <= kmax; ++v) {
      k[axis] = v;
      self(self, axis + 1);
    }
  };
  visit(visit, 0);
  return set;
}

Theorem21Report theorem21_experiment(const SpectralField &v0, double r, double t,
                                     double c0) {
  if (!(r >= 0.0 && r <= 2.0))
    throw DomainError("theorem21_experiment needs 0 <= r <= 2");
  if (!(t > 0.0))
    throw DomainError("theorem21_experiment needs t > 0");
  Theorem21Report rep;
  rep.r = r;
  rep.t = t;
  rep.c0 = c0;

  const double vol = std::pow(kTorusLength, 0.5 * v0.dim());
  const double pref = std::pow(2.0, 1.0 - 0.5 * r) * std::pow(t, 0.5 * r);
  const bool lower_applies = t < 1.0;
  const double lo = lower_applies ? 2.0 / t * std::asin(c0) : 0.0;
  const double hi = lower_applies ? 2.0 / t * sinc_inverse(c0) : 0.0;

  double shift = 0.0;
  double window = 0.0;
  auto c = v0.coeffs();
  for (std::size_t f = 0; f < c.size(); ++f) {
    const long k2 = v0.wavenumber_squared(f);
    if (k2 == 0)
      continue;
    const auto x = static_cast<double>(k2);
    const double a2 = std::norm(c[f]);
    const double sn = std::sin(0.5 * x * t);
    shift += sn * sn * a2;
    if (lower_applies && x >= lo && x <= hi)
      window += std::pow(x, r) * a2;
  }
  rep.err = 2.0 * vol * std::sqrt(shift);
  rep.upper = pref * hs_seminorm(v0, r);
  rep.lower = lower_applies ? pref * vol * c0 * std::sqrt(window) : 0.0;
  const auto tol = [](double b) { return 1e-12 * std::max(1.0, b); };
  rep.holds_upper = rep.err <= rep.upper + tol(rep.upper);
  rep.holds_lower = rep.err + tol(rep.lower) >= rep.lower;
  return rep;
}

void write_theorem21_csv_header(std::ostream &out) { out << "r,t,c0,err,upper,lower\n"; }

void write_theorem21_csv_row(std::ostream &out, const Theorem21Report &rep) {
  const auto old = out.precision(17);
  out << rep.r << ',' << rep.t << ',' << rep.c0 << ',' << rep.err << ','
      << rep.upper << ',' << rep.lower << '\n';
  out.precision(old);
}

} // namespace logsplit
