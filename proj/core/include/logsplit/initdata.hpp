#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "logsplit/spectral.hpp"

namespace logsplit {

/// Exact Gaussian-profile solution
///   u(x,t) = b exp{i(x·ζ - (a+|ζ|²)t) + (λ/2)|x - 2ζt|²},  a = -λ(d - ln b²).
struct GaussonParams {
  double lambda = -16.0;
  double b = 1.0;
  std::array<double, kMaxDim> zeta{};
  int dim = 1;

  double a() const noexcept;
  void validate() const;
};

cplx gausson_exact(const GaussonParams &p, std::span<const double> x, double t);
cplx gausson_exact(const GaussonParams &p, double x, double t);

/// Closed-form ∂u/∂t of the Gausson.
cplx gausson_time_derivative(const GaussonParams &p, std::span<const double> x,
                             double t);

/// Grid-L∞ norm of i∂_t u + Δu - λ u ln|u|² for the 1D Gausson at time t,
/// with Δ applied spectrally to the cutoff-N projection.
double gausson_residual(const GaussonParams &p, int N, double t, int oversample = 4);

/// û_0 = 0, û_k = a_k / |k|^{s+β}, Re a_k and Im a_k uniform on [-1, 1].
struct RandomHsParams {
  double s = 0.8;
  double beta = 0.51;
  int K = 100000;
  std::uint64_t seed = 42;

  void validate() const;
};

/// Deterministic for a given seed. Draws run over n = 1..K as a_n then a_{-n},
/// so the list for a smaller K is a prefix-compatible truncation.
SpectralField random_hs_coeffs(const RandomHsParams &p);

/// 2^{s+1}/(2β-1), an upper bound of ‖u₀‖²_{H^s} / |T|.
double random_hs_norm_bound(const RandomHsParams &p);

/// u₀(x) = |x|^γ e^{iℓx}.
struct PowerSingularParams {
  double gamma = 0.3;
  int ell = 2;

  void validate() const;
};

/// (1/π) ∫_0^π x^γ cos(nx) dx for integer n; the coefficient of |x|^γ at mode n.
double power_profile_coeff(double gamma, long n);

/// Coefficients for k = -K..K, K >= |ℓ| + 1.
SpectralField power_singular_coeffs(const PowerSingularParams &p, int K);

struct GagliardoBoundReport {
  double gamma = 0.0;
  double s = 0.0;
  int K = 0;
  double value = 0.0;     // double integral of |x|^γ from its first K modes
  double bound = 0.0;     // (2π)^{2γ-2s+1} / ((γ-s)(2γ-2s+1))
  double rel_error = 0.0; // quadrature self-consistency estimate
  bool holds = false;
};

/// Requires 0 < s < γ; otherwise DomainError.
GagliardoBoundReport gagliardo_bound_check(const PowerSingularParams &p, double s,
                                           int K = 1024);

enum class DataFamily { Gausson, RandomHs, PowerSingular, CoefficientFile };

const char *family_name(DataFamily f) noexcept;

/// A fully described initial datum. Either `coeffs` holds an explicit
/// coefficient list or `evaluator` gives nodal values.
struct InitialData {
  DataFamily family = DataFamily::Gausson;
  std::variant<GaussonParams, RandomHsParams, PowerSingularParams,
               std::filesystem::path>
      params;
  int dim = 1;
  double hs_index = 0.0;
  double hs_norm = 0.0;
  std::optional<SpectralField> coeffs;
  std::function<cplx(std::span<const double>)> evaluator;

  bool has_coefficients() const noexcept { return coeffs.has_value(); }

  /// Key/value description for data cards and manifests.
  std::vector<std::pair<std::string, std::string>> describe() const;
};

/// hs_norm is ‖Π_256 u₀‖_{H^s} (exact to rounding for the default parameters).
InitialData make_gausson(const GaussonParams &p, double s = 0.0);
InitialData make_random_hs(const RandomHsParams &p);
/// hs_norm uses the first K modes; at s = γ + 1/2 it grows like sqrt(ln K).
InitialData make_power_singular(const PowerSingularParams &p, int K, double s);
InitialData load_coefficient_data(const std::filesystem::path &path, double s);

} // namespace logsplit
