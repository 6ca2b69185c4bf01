#include "logsplit/gagliardo.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "logsplit/errors.hpp"
#include "logsplit/quadrature.hpp"
#include "logsplit/spectral.hpp"

namespace logsplit {

namespace {

// ∫_0^h sin²(nx/2) x^{-1-2s} dx by the Taylor series of (1 - cos nx)/2.
// Requires n·h <= 1 so the terms decrease monotonically.
double inner_series(double n, double h, double s) {
  const double nh2 = (n * h) * (n * h);
  double sum = 0.0;
  // term_j = (-1)^{j+1} (nh)^{2j} / (2 (2j)!) * h^{-2s} / (2j - 2s)
  double power = 1.0; // (nh)^{2j} / (2j)!
  for (int j = 1; j < 40; ++j) {
    power *= nh2 / ((2.0 * j - 1.0) * (2.0 * j));
    const double term = power / (2.0 * (2.0 * j - 2.0 * s));
    sum += (j % 2 == 1) ? term : -term;
    if (term < 1e-18 * std::abs(sum))
      break;
  }
  return sum * std::pow(h, -2.0 * s);
}

double panel_sum(long n, double s, std::span<const double> breaks,
                 const GaussRule &rule) {
  const double nn = static_cast<double>(n);
  const double expo = -1.0 - 2.0 * s;
  return integrate_panels(
      [&](double x) {
        const double sn = std::sin(0.5 * nn * x);
        return sn * sn * std::pow(x, expo);
      },
      breaks, rule);
}

// ∫_0^∞ e^{-v} (A + iv)^{-p} dv on [0, 64] split into `panels` Gauss panels.
cplx rotated_tail(double A, double p, int panels, const GaussRule &rule) {
  const double width = 64.0 / panels;
  cplx total{};
  for (int k = 0; k < panels; ++k) {
    const double mid = (k + 0.5) * width;
    cplx panel{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double v = mid + 0.5 * width * rule.nodes[i];
      panel += rule.weights[i] * std::pow(cplx(A, v), -p) * std::exp(-v);
    }
    total += 0.5 * width * panel;
  }
  return total;
}

QuadratureValue rescaled_weight(long n, double s, const QuadratureSpec &spec) {
  const double pi = std::numbers::pi;
  const double nn = static_cast<double>(n);
  const double A = nn * pi;
  const double p = 1.0 + 2.0 * s;
  const double full = pi / (4.0 * std::tgamma(1.0 + 2.0 * s) * std::sin(pi * s));
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const GaussRule &rule = gauss_legendre(spec.points_per_panel);
  // ∫_A^∞ e^{iy} y^{-p} dy = i e^{iA} J, and e^{iA} = ±1.
  const auto bracket = [&](int panels) {
    const cplx J = rotated_tail(A, p, panels, rule);
    return full - std::pow(A, -2.0 * s) / (4.0 * s) - 0.5 * sign * J.imag();
  };
  const double coarse = bracket(8);
  const double fine = bracket(16);
  QuadratureValue out;
  out.value = 8.0 * std::pow(nn, 2.0 * s) * fine;
  out.rel_error = std::abs(fine - coarse) / std::abs(fine);
  if (!(out.rel_error <= spec.rel_tol))
    throw QuadratureError("B_n tail integral for n = " + std::to_string(n) +
                              " did not converge",
                          out.rel_error);
  return out;
}

} // namespace

QuadratureValue gagliardo_mode_weight(long n, double s,
                                      const QuadratureSpec &spec) {
  if (!(s > 0.0 && s < 1.0))
    throw DomainError("Gagliardo seminorm needs 0 < s < 1, got " +
                      std::to_string(s));
  if (n == 0)
    return {0.0, 0.0};
  n = std::abs(n);
  if (n > spec.direct_limit)
    return rescaled_weight(n, s, spec);
  const double pi = std::numbers::pi;
  const double nn = static_cast<double>(n);
  const GaussRule &rule = gauss_legendre(spec.points_per_panel);

  // Deepen the grading until the residual piece satisfies n·h <= 1.
  int levels = spec.graded_panels;
  while (nn * pi * std::pow(spec.grading_ratio, levels) > 1.0)
    ++levels;
  auto graded = geometric_breakpoints(pi, levels, spec.grading_ratio);
  const double h = graded.front();
  auto breaks = subdivide(graded, 2.0 * pi / nn);

  const double inner = inner_series(nn, h, s);
  const double coarse = inner + panel_sum(n, s, breaks, rule);
  const double fine = inner + panel_sum(n, s, bisect_all(breaks), rule);

  QuadratureValue out;
  out.value = 8.0 * fine;
  out.rel_error = std::abs(fine - coarse) / std::abs(fine);
  if (!(out.rel_error <= spec.rel_tol))
    throw QuadratureError("B_n quadrature for n = " + std::to_string(n) +
                              " did not converge",
                          out.rel_error);
  return out;
}

GagliardoResult gagliardo_seminorm_1d(const SpectralField &field, double s,
                                      const QuadratureSpec &spec) {
  if (field.dim() != 1)
    throw ConfigError("Gagliardo seminorm is implemented for d = 1 only");
  if (!(s > 0.0 && s < 1.0))
    throw DomainError("Gagliardo seminorm needs 0 < s < 1, got " +
                      std::to_string(s));
  GagliardoResult r;
  double sum = 0.0;
  for (int n = 1; n <= field.cutoff(); ++n) {
    const double weight2 = std::norm(field(n)) + std::norm(field(-n));
    if (weight2 == 0.0)
      continue;
    const QuadratureValue b = gagliardo_mode_weight(n, s, spec);
    sum += weight2 * b.value;
    r.max_rel_error = std::max(r.max_rel_error, b.rel_error);
  }
  r.double_integral = kTorusLength * sum;
  r.seminorm = std::sqrt(r.double_integral);
  return r;
}

ModeRatioBounds gagliardo_mode_ratio_bounds(double s, long n_max,
                                            const QuadratureSpec &spec) {
  ModeRatioBounds r;
  r.min_ratio = INFINITY;
  r.max_ratio = 0.0;
  for (long n = 1; n <= n_max; ++n) {
    const double ratio =
        gagliardo_mode_weight(n, s, spec).value * std::pow(static_cast<double>(n), -2.0 * s);
    if (ratio < r.min_ratio) {
      r.min_ratio = ratio;
      r.argmin = n;
    }
    if (ratio > r.max_ratio) {
      r.max_ratio = ratio;
      r.argmax = n;
    }
  }
  return r;
}

} // namespace logsplit
