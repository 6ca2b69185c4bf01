#include "logsplit/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>

#include "logsplit/errors.hpp"

namespace logsplit {

namespace {

// Boost stores the nonnegative half of the symmetric rule.
template <unsigned N> GaussRule make_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto &x = G::abscissa();
  const auto &w = G::weights();
  GaussRule r;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      r.nodes.push_back(0.0);
      r.weights.push_back(w[i]);
      continue;
    }
    r.nodes.push_back(x[i]);
    r.weights.push_back(w[i]);
    r.nodes.push_back(-x[i]);
    r.weights.push_back(w[i]);
  }
  return r;
}

} // namespace

const GaussRule &gauss_legendre(int points) {
  static const GaussRule r8 = make_rule<8>();
  static const GaussRule r16 = make_rule<16>();
  static const GaussRule r32 = make_rule<32>();
  static const GaussRule r64 = make_rule<64>();
  switch (points) {
  case 8:
    return r8;
  case 16:
    return r16;
  case 32:
    return r32;
  case 64:
    return r64;
  default:
    throw ConfigError("unsupported Gauss-Legendre size " + std::to_string(points));
  }
}

std::vector<double> geometric_breakpoints(double b, int levels, double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw ConfigError("grading ratio must lie in (0, 1)");
  std::vector<double> out(static_cast<std::size_t>(levels) + 1);
  double x = b;
  for (int i = levels; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = x;
    x *= ratio;
  }
  return out;
}

std::vector<double> subdivide(std::span<const double> breaks, double max_width) {
  std::vector<double> out;
  if (breaks.empty())
    return out;
  out.push_back(breaks[0]);
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double a = breaks[p];
    const double b = breaks[p + 1];
    const auto pieces =
        static_cast<long>(std::max(1.0, std::ceil((b - a) / max_width)));
    for (long i = 1; i < pieces; ++i)
      out.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(pieces));
    out.push_back(b);
  }
  return out;
}

std::vector<double> bisect_all(std::span<const double> breaks) {
  std::vector<double> out;
  if (breaks.empty())
    return out;
  out.push_back(breaks[0]);
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    out.push_back(0.5 * (breaks[p] + breaks[p + 1]));
    out.push_back(breaks[p + 1]);
  }
  return out;
}

} // namespace logsplit
