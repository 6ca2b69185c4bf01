#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace logsplit {

using cplx = std::complex<double>;

/// Length of one period of the torus, |T| = 2π.
inline constexpr double kTorusLength = 2.0 * std::numbers::pi;

/// Upper bound on the spatial dimension handled by the frequency-side code.
inline constexpr int kMaxDim = 3;

using WaveVector = std::array<int, kMaxDim>;

/// Uniform tensor grid on [-π, π)^d.
///
/// `modes` is the retained cutoff N and `nodes_per_dim` the quadrature
/// resolution M. Construction enforces M >= 2N+1 so retained modes never
/// alias onto each other.
class TorusGrid {
public:
  TorusGrid(int dim, int modes, int nodes_per_dim);

  /// Grid for cutoff N with M = smallest power of two >= q(2N+1).
  static TorusGrid oversampled(int dim, int modes, int oversample = 4);

  int dim() const noexcept { return dim_; }
  int modes() const noexcept { return modes_; }
  int nodes_per_dim() const noexcept { return nodes_; }
  std::size_t node_count() const noexcept;

  /// x_j = -π + 2πj/M.
  double node(int j) const noexcept;
  double spacing() const noexcept { return kTorusLength / nodes_; }

  /// Quadrature weight of one node, (2π/M)^d.
  double cell_volume() const noexcept;

  bool operator==(const TorusGrid &) const = default;

private:
  int dim_;
  int modes_;
  int nodes_;
};

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

/// Fourier coefficients on K_N^d = {k : |k_i| <= N}, stored row-major with
/// each axis in natural order k = -N..N.
class SpectralField {
public:
  SpectralField() = default;
  SpectralField(int dim, int cutoff);
  SpectralField(int dim, int cutoff, std::vector<cplx> coeffs);

  static SpectralField zeros(int dim, int cutoff) { return {dim, cutoff}; }

  int dim() const noexcept { return dim_; }
  int cutoff() const noexcept { return cutoff_; }
  int side() const noexcept { return 2 * cutoff_ + 1; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  std::span<cplx> coeffs() noexcept { return coeffs_; }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }

  /// 1D access by wavenumber.
  cplx &operator()(int k) { return coeffs_[static_cast<std::size_t>(k + cutoff_)]; }
  const cplx &operator()(int k) const {
    return coeffs_[static_cast<std::size_t>(k + cutoff_)];
  }

  std::size_t flat_index(const WaveVector &k) const;
  WaveVector wave_vector(std::size_t flat) const;
  /// |k|^2 of the mode stored at `flat`.
  long wavenumber_squared(std::size_t flat) const;

  /// Throws NonFiniteError naming the first bad coefficient.
  void require_finite() const;

private:
  int dim_ = 1;
  int cutoff_ = 0;
  std::vector<cplx> coeffs_ = std::vector<cplx>(1);
};

/// Nodal values on a TorusGrid, row-major with the first axis slowest.
class PhysicalField {
public:
  explicit PhysicalField(TorusGrid grid);
  PhysicalField(TorusGrid grid, std::vector<cplx> values);

  const TorusGrid &grid() const noexcept { return grid_; }
  std::span<cplx> values() noexcept { return values_; }
  std::span<const cplx> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  cplx &operator[](std::size_t j) { return values_[j]; }
  const cplx &operator[](std::size_t j) const { return values_[j]; }

  void require_finite() const;

private:
  TorusGrid grid_;
  std::vector<cplx> values_;
};

/// Discrete Fourier coefficients of `field` for k in K_N^d. Exact for
/// trigonometric polynomials of degree <= M-N-1.
SpectralField forward(const PhysicalField &field, int cutoff);

/// Nodal values of the trigonometric polynomial on the q-oversampled grid.
PhysicalField synthesize(const SpectralField &field, int oversample = 4);

/// Nodal values on an explicit grid; the grid must satisfy M >= 2N+1.
PhysicalField synthesize_on(const SpectralField &field, const TorusGrid &grid);

/// Π_N: keep the modes with |k_i| <= N. Requires the input cutoff K >= N.
SpectralField project(const SpectralField &field, int cutoff);

/// Truncate or zero-pad to a new cutoff.
SpectralField resize(const SpectralField &field, int cutoff);

/// ∂/∂x_axis as the multiplier i k_axis.
SpectralField derivative(const SpectralField &field, int axis);
/// Δ as the multiplier -|k|².
SpectralField laplacian(const SpectralField &field);

/// a - b after padding both to the larger cutoff.
SpectralField difference(const SpectralField &a, const SpectralField &b);

/// |T|^{d/2} (Σ|û_k|²)^{1/2}.
double l2_norm(const SpectralField &field);
/// Trapezoidal L² norm over the grid nodes.
double l2_norm(const PhysicalField &field);
/// Max modulus over grid nodes (a grid approximation of the continuum L∞).
double linf_norm(const PhysicalField &field);

/// |T|^{d/2} (Σ_{k≠0} |k|^{2s} |û_k|²)^{1/2}, 0 <= s <= 2.
double hs_seminorm(const SpectralField &field, double s);
/// |T|^{d/2} (Σ_k (1+|k|²)^s |û_k|²)^{1/2}, 0 <= s <= 2.
double hs_norm(const SpectralField &field, double s);

/// Both sides of ‖φ‖_∞ <= ((2N+1)/|T|)^{d/2} ‖φ‖ for φ in X_N^d. The left
/// side is evaluated on a grid oversampled by `oversample` (>= 8).
struct InverseInequalityReport {
  double linf = 0.0;
  double l2 = 0.0;
  double bound = 0.0;
  bool holds = true;
};

InverseInequalityReport inverse_inequality_check(const SpectralField &field,
                                                 int oversample = 8);

} // namespace logsplit
