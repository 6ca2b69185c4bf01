#pragma once

#include "logsplit/spectral.hpp"

namespace logsplit {

/// Graded composite Gauss scheme for the singular kernel integrals.
///
/// The interval (0, π] is cut geometrically toward 0 (`graded_panels`
/// levels with ratio `grading_ratio`), each panel is further split to at
/// most one oscillation period, and the residual piece [0, π·ratio^levels]
/// is integrated term by term from the Taylor series of sin². The error
/// estimate compares against the same scheme with every panel bisected.
///
/// Above `direct_limit` the weight is taken from the rescaled form
/// 8 n^{2s} [C_s - (nπ)^{-2s}/(4s) + ½ Re ∫_{nπ}^∞ e^{iy} y^{-1-2s} dy],
/// whose tail integral is evaluated along the rotated contour y = nπ + iv.
struct QuadratureSpec {
  int points_per_panel = 16;
  int graded_panels = 40;
  double grading_ratio = 0.5;
  double rel_tol = 1e-8;
  long direct_limit = 256;
};

struct QuadratureValue {
  double value = 0.0;
  double rel_error = 0.0;
};

/// B̃_n = ∫_T |e^{inx} - 1|² / |x|^{1+2s} dx = 4 ∫_T sin²(nx/2) / |x|^{1+2s} dx,
/// for 0 < s < 1. Throws QuadratureError when rel_error exceeds spec.rel_tol.
QuadratureValue gagliardo_mode_weight(long n, double s,
                                      const QuadratureSpec &spec = {});

struct GagliardoResult {
  /// ∫_T ∫_T |u(x+y) - u(y)|² / |x|^{1+2s} dx dy = |T| Σ_{n≠0} |û_n|² B̃_n.
  double double_integral = 0.0;
  /// Square root of the double integral.
  double seminorm = 0.0;
  /// Largest per-mode relative quadrature error estimate.
  double max_rel_error = 0.0;
};

/// Physical-space (Gagliardo-type) seminorm of a 1D field from its
/// coefficients. Requires d = 1 and 0 < s < 1.
GagliardoResult gagliardo_seminorm_1d(const SpectralField &field, double s,
                                      const QuadratureSpec &spec = {});

/// Empirical two-sided bounds of B̃_n |n|^{-2s} over n = 1..n_max.
struct ModeRatioBounds {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  long argmin = 0;
  long argmax = 0;
};

ModeRatioBounds gagliardo_mode_ratio_bounds(double s, long n_max,
                                            const QuadratureSpec &spec = {});

} // namespace logsplit
