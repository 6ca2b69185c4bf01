#pragma once

#include <span>
#include <vector>

namespace logsplit {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Supported sizes: 8, 16, 32, 64.
const GaussRule &gauss_legendre(int points);

/// Σ over consecutive breakpoint pairs of the mapped Gauss rule.
template <class F>
double integrate_panels(F &&f, std::span<const double> breaks,
                        const GaussRule &rule) {
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double a = breaks[p];
    const double b = breaks[p + 1];
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double panel = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      panel += rule.weights[i] * f(mid + half * rule.nodes[i]);
    total += half * panel;
  }
  return total;
}

/// Breakpoints b·r^levels, ..., b·r, b refined geometrically toward 0.
std::vector<double> geometric_breakpoints(double b, int levels, double ratio);

/// Splits every panel into equal pieces no wider than `max_width`.
std::vector<double> subdivide(std::span<const double> breaks, double max_width);

/// Halves every panel.
std::vector<double> bisect_all(std::span<const double> breaks);

} // namespace logsplit
