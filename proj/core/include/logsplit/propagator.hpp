#pragma once

#include <ostream>
#include <vector>

#include "logsplit/spectral.hpp"

namespace logsplit {

/// Free flow e^{itΔ}: û_k ↦ e^{-i|k|²t} û_k. Any real t.
SpectralField phi_A(const SpectralField &field, double t);

/// The root ξ ∈ (1, π) of sin(ξ)/ξ = c0, for 0 < c0 < sin 1.
double sinc_inverse(double c0);

/// Modes whose phase shift sin(|k|²t/2) is bounded below by c0·|k|²t/2:
///   (2/t) arcsin(c0) <= |k|² <= (2/t) sinc⁻¹(c0),  k ≠ 0.
struct Kc0Set {
  double c0 = 0.0;
  double t = 0.0;
  int dim = 1;
  double lower = 0.0; // bounds on |k|²
  double upper = 0.0;
  std::vector<WaveVector> members;

  bool empty() const noexcept { return members.empty(); }
  bool contains(const WaveVector &k) const noexcept;
};

Kc0Set build_kc0(double c0, double t, int kmax, int dim = 1);

struct Theorem21Report {
  double r = 0.0;
  double t = 0.0;
  double c0 = 0.0;
  double err = 0.0;   // ‖Φ_A^t v - v‖
  double upper = 0.0; // 2^{1-r/2} t^{r/2} |v|_{H^r}
  double lower = 0.0; // 2^{1-r/2} |T|^{d/2} c0 t^{r/2} (Σ_{K_c0} |k|^{2r}|v̂_k|²)^{1/2}
  bool holds_upper = true;
  bool holds_lower = true;
};

/// Exact shift error of the free flow against both optimality bounds.
/// The lower bound is only evaluated for 0 < t < 1 (otherwise it is 0).
Theorem21Report theorem21_experiment(const SpectralField &v0, double r, double t,
                                     double c0);

void write_theorem21_csv_header(std::ostream &out);
void write_theorem21_csv_row(std::ostream &out, const Theorem21Report &rep);

} // namespace logsplit
