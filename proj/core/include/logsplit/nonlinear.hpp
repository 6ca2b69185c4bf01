#pragma once

#include <span>

#include "logsplit/spectral.hpp"

namespace logsplit {

/// Coupling λ and regularisation ε (0 selects the non-regularised flow).
struct NonlinParams {
  double lambda = -1.0;
  double eps = 0.0;

  /// λ ≠ 0, ε >= 0, both finite.
  void validate() const;
};

/// f(z) = z ln|z|², with f(0) = 0.
cplx log_nonlinearity(cplx z) noexcept;

/// f^ε(z) = z ln(|z| + ε)². Throws DomainError unless ε > 0.
cplx log_nonlinearity_eps(cplx z, double eps);

/// In-place Φ_B^t: w ↦ w e^{-2iλt ln|w|}; nodes with w = 0 stay 0.
void apply_phi_B(std::span<cplx> values, double lambda, double t) noexcept;

/// In-place Φ_B^{t,ε}: w ↦ w e^{-2iλt ln(|w|+ε)}. Throws unless ε > 0.
void apply_phi_B_eps(std::span<cplx> values, double lambda, double t, double eps);

PhysicalField phi_B(const PhysicalField &field, const NonlinParams &params, double t);
PhysicalField phi_B_eps(const PhysicalField &field, const NonlinParams &params,
                        double t);

/// lhs <= rhs, accepted up to a slack of 1e-12·max(1, rhs).
struct Inequality {
  double lhs = 0.0;
  double rhs = 0.0;

  double margin() const noexcept { return rhs - lhs; }
  double slack() const noexcept;
  bool holds() const noexcept { return lhs <= rhs + slack(); }
};

/// |f^ε(z) - f(z)| <= 2ε.
Inequality regularization_gap_check(cplx z, double eps);

/// Both Hölder-type bounds for one pair, with ζ = max(|z1|, |z2|):
///   |f^ε(z2) - f^ε(z1)| <= 2(|ln(ζ+ε)| + 1)|z1 - z2|
///   |f(z1) - f(z2)|     <= 4ε + 2(|ln(ζ+ε)| + 1)|z1 - z2|
struct HolderPairReport {
  Inequality regularized;
  Inequality unregularized;

  bool holds() const noexcept { return regularized.holds() && unregularized.holds(); }
};

HolderPairReport holder_pair_check(cplx z1, cplx z2, double eps);

/// |Im{(f(z1) - f(z2))(conj z1 - conj z2)}| <= 2|z1 - z2|².
Inequality ch_monotonicity_check(cplx z1, cplx z2) noexcept;

/// |Φ_B^t[a] - Φ_B^t[b]| <= (1 + 2|λ|t)|a - b| for two values.
Inequality phi_B_pair_check(cplx a, cplx b, double lambda, double t) noexcept;

/// |Φ_B^{t,ε}[w] - Φ_B^t[w]| <= 2|λ|tε.
Inequality phi_B_eps_gap_check(cplx w, double lambda, double t, double eps);

/// ‖Φ_B^t[u] - Φ_B^t[v]‖ <= (1 + 2|λ|t)‖u - v‖ on a common grid.
Inequality phi_B_l2_lipschitz_check(const PhysicalField &u, const PhysicalField &v,
                                    double lambda, double t);

/// max over node pairs of |Φ_B^t[w](x) - Φ_B^t[w](y)| - (1+2|λ|t)|w(x)-w(y)|,
/// reported as the pair with the smallest margin.
Inequality phi_B_node_pair_check(const PhysicalField &w, double lambda, double t);

/// ‖∇Φ_B^{t,ε}[w]‖ <= (1 + 2|λ|t)‖∇w‖ for w in X_N^1 (so ‖∇w‖ = |w|_{H¹}).
/// The left side is the nodal (trapezoidal) norm of the chain-rule gradient
/// on the q-oversampled grid.
Inequality phi_B_eps_gradient_check(const SpectralField &w, double lambda, double t,
                                    double eps, int oversample = 8);

/// L² stability of f^ε and f with the grid-L∞ factor
/// Υ(ε) = max{|ln ε|, ln(‖u‖_∞+1), ln(‖v‖_∞+1)} + 1, 0 < ε < 1.
struct LogL2Report {
  double upsilon = 0.0;
  Inequality regularized;   // ‖f^ε(u) - f^ε(v)‖ <= 2Υ‖u - v‖
  Inequality unregularized; // ‖f(u) - f(v)‖ <= 4|Ω|^{1/2}ε + 2Υ‖u - v‖

  bool holds() const noexcept { return regularized.holds() && unregularized.holds(); }
};

LogL2Report log_l2_stability_check(const PhysicalField &u, const PhysicalField &v,
                                   double eps);

/// |f^ε(u)|_{H^s} <= 2Υ̂(ε)|u|_{H^s} for s ∈ {0, 1} (s = 0 means the L² norm),
/// with Υ̂(ε) = max{|ln ε|, ln(‖u‖_∞+1)} + 1 and grid norms on the
/// q-oversampled grid.
Inequality log_hs_stability_check(const SpectralField &u, double eps, int s,
                                  int oversample = 8);

} // namespace logsplit
