#include "logsplit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "logsplit/errors.hpp"
#include "logsplit/transform.hpp"

namespace logsplit {

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i)
    r *= base;
  return r;
}

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim)
    throw ConfigError("dimension must be in [1, " + std::to_string(kMaxDim) +
                      "], got " + std::to_string(dim));
}

void check_sobolev_index(double s) {
  if (!(s >= 0.0 && s <= 2.0))
    throw DomainError("Sobolev index must lie in [0, 2], got " +
                      std::to_string(s));
}

} // namespace

// ---------------------------------------------------------------- TorusGrid

TorusGrid::TorusGrid(int dim, int modes, int nodes_per_dim)
    : dim_(dim), modes_(modes), nodes_(nodes_per_dim) {
  check_dim(dim);
  if (modes < 0)
    throw ConfigError("cutoff N must be nonnegative");
  if (nodes_per_dim < 2 * modes + 1)
    throw ConfigError("grid has M = " + std::to_string(nodes_per_dim) +
                      " nodes per dimension but cutoff N = " +
                      std::to_string(modes) + " needs M >= 2N+1");
}

TorusGrid TorusGrid::oversampled(int dim, int modes, int oversample) {
  if (oversample < 1)
    throw ConfigError("oversampling factor must be >= 1");
  const auto target =
      static_cast<std::size_t>(oversample) * static_cast<std::size_t>(2 * modes + 1);
  return {dim, modes, static_cast<int>(next_pow2(target))};
}

std::size_t TorusGrid::node_count() const noexcept {
  return ipow(static_cast<std::size_t>(nodes_), dim_);
}

double TorusGrid::node(int j) const noexcept {
  return -std::numbers::pi + kTorusLength * j / nodes_;
}

double TorusGrid::cell_volume() const noexcept {
  return std::pow(spacing(), dim_);
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n)
    p <<= 1;
  return p;
}

// ------------------------------------------------------------ SpectralField

SpectralField::SpectralField(int dim, int cutoff) : dim_(dim), cutoff_(cutoff) {
  check_dim(dim);
  if (cutoff < 0)
    throw ConfigError("cutoff must be nonnegative");
  coeffs_.assign(ipow(static_cast<std::size_t>(2 * cutoff + 1), dim), cplx{});
}

SpectralField::SpectralField(int dim, int cutoff, std::vector<cplx> coeffs)
    : dim_(dim), cutoff_(cutoff), coeffs_(std::move(coeffs)) {
  check_dim(dim);
  if (cutoff < 0)
    throw ConfigError("cutoff must be nonnegative");
  if (coeffs_.size() != ipow(static_cast<std::size_t>(2 * cutoff + 1), dim))
    throw ConfigError("coefficient count does not match (2N+1)^d");
}

std::size_t SpectralField::flat_index(const WaveVector &k) const {
  std::size_t idx = 0;
  const auto s = static_cast<std::size_t>(side());
  for (int i = 0; i < dim_; ++i) {
    if (k[i] < -cutoff_ || k[i] > cutoff_)
      throw ConfigError("wavenumber outside K_N");
    idx = idx * s + static_cast<std::size_t>(k[i] + cutoff_);
  }
  return idx;
}

WaveVector SpectralField::wave_vector(std::size_t flat) const {
  WaveVector k{};
  const auto s = static_cast<std::size_t>(side());
  for (int i = dim_ - 1; i >= 0; --i) {
    k[i] = static_cast<int>(flat % s) - cutoff_;
    flat /= s;
  }
  return k;
}

long SpectralField::wavenumber_squared(std::size_t flat) const {
  const WaveVector k = wave_vector(flat);
  long r = 0;
  for (int i = 0; i < dim_; ++i)
    r += static_cast<long>(k[i]) * k[i];
  return r;
}

void SpectralField::require_finite() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!std::isfinite(coeffs_[i].real()) || !std::isfinite(coeffs_[i].imag()))
      throw NonFiniteError("non-finite Fourier coefficient", i);
}

// ------------------------------------------------------------ PhysicalField

PhysicalField::PhysicalField(TorusGrid grid)
    : grid_(grid), values_(grid.node_count()) {}

PhysicalField::PhysicalField(TorusGrid grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.node_count())
    throw ConfigError("value count does not match M^d");
}

void PhysicalField::require_finite() const {
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!std::isfinite(values_[i].real()) || !std::isfinite(values_[i].imag()))
      throw NonFiniteError("non-finite nodal value", i);
}

// --------------------------------------------------------------- transforms

SpectralField forward(const PhysicalField &field, int cutoff) {
  field.require_finite();
  const TorusGrid &g = field.grid();
  if (g.nodes_per_dim() < 2 * cutoff + 1)
    throw ConfigError("forward: M = " + std::to_string(g.nodes_per_dim()) +
                      " is below 2N+1 = " + std::to_string(2 * cutoff + 1));
  SpectralField out(g.dim(), cutoff);
  transform_for(g.dim(), g.nodes_per_dim()).forward(field.values(), out);
  return out;
}

PhysicalField synthesize(const SpectralField &field, int oversample) {
  return synthesize_on(field,
                       TorusGrid::oversampled(field.dim(), field.cutoff(), oversample));
}

PhysicalField synthesize_on(const SpectralField &field, const TorusGrid &grid) {
  if (grid.dim() != field.dim())
    throw ConfigError("synthesize: dimension mismatch");
  if (grid.nodes_per_dim() < 2 * field.cutoff() + 1)
    throw ConfigError("synthesize: grid too coarse for cutoff");
  PhysicalField out(grid);
  transform_for(grid.dim(), grid.nodes_per_dim()).synthesize(field, out.values());
  return out;
}

SpectralField project(const SpectralField &field, int cutoff) {
  if (cutoff > field.cutoff())
    throw ConfigError("project: input cutoff K = " +
                      std::to_string(field.cutoff()) + " is below N = " +
                      std::to_string(cutoff));
  return resize(field, cutoff);
}

SpectralField resize(const SpectralField &field, int cutoff) {
  SpectralField out(field.dim(), cutoff);
  const int common = std::min(cutoff, field.cutoff());
  auto src = field.coeffs();
  for (std::size_t f = 0; f < src.size(); ++f) {
    const WaveVector k = field.wave_vector(f);
    bool inside = true;
    for (int i = 0; i < field.dim(); ++i)
      inside = inside && std::abs(k[i]) <= common;
    if (inside)
      out.coeffs()[out.flat_index(k)] = src[f];
  }
  return out;
}

SpectralField derivative(const SpectralField &field, int axis) {
  if (axis < 0 || axis >= field.dim())
    throw ConfigError("derivative: axis out of range");
  SpectralField out = field;
  auto c = out.coeffs();
  for (std::size_t f = 0; f < c.size(); ++f)
    c[f] *= cplx(0.0, static_cast<double>(field.wave_vector(f)[axis]));
  return out;
}

SpectralField laplacian(const SpectralField &field) {
  SpectralField out = field;
  auto c = out.coeffs();
  for (std::size_t f = 0; f < c.size(); ++f)
    c[f] *= -static_cast<double>(field.wavenumber_squared(f));
  return out;
}

SpectralField difference(const SpectralField &a, const SpectralField &b) {
  if (a.dim() != b.dim())
    throw ConfigError("difference: dimension mismatch");
  const int cutoff = std::max(a.cutoff(), b.cutoff());
  SpectralField out = resize(a, cutoff);
  const SpectralField bb = resize(b, cutoff);
  for (std::size_t i = 0; i < out.size(); ++i)
    out.coeffs()[i] -= bb.coeffs()[i];
  return out;
}

// -------------------------------------------------------------------- norms

double l2_norm(const SpectralField &field) {
  double sum = 0.0;
  for (const cplx &c : field.coeffs())
    sum += std::norm(c);
  return std::pow(kTorusLength, 0.5 * field.dim()) * std::sqrt(sum);
}

double l2_norm(const PhysicalField &field) {
  double sum = 0.0;
  for (const cplx &v : field.values())
    sum += std::norm(v);
  return std::sqrt(field.grid().cell_volume() * sum);
}

double linf_norm(const PhysicalField &field) {
  double m = 0.0;
  for (const cplx &v : field.values())
    m = std::max(m, std::abs(v));
  return m;
}

double hs_seminorm(const SpectralField &field, double s) {
  check_sobolev_index(s);
  double sum = 0.0;
  auto c = field.coeffs();
  for (std::size_t f = 0; f < c.size(); ++f) {
    const long k2 = field.wavenumber_squared(f);
    if (k2 == 0)
      continue;
    sum += std::pow(static_cast<double>(k2), s) * std::norm(c[f]);
  }
  return std::pow(kTorusLength, 0.5 * field.dim()) * std::sqrt(sum);
}

double hs_norm(const SpectralField &field, double s) {
  check_sobolev_index(s);
  double sum = 0.0;
  auto c = field.coeffs();
  for (std::size_t f = 0; f < c.size(); ++f) {
    const long k2 = field.wavenumber_squared(f);
    sum += std::pow(1.0 + static_cast<double>(k2), s) * std::norm(c[f]);
  }
  return std::pow(kTorusLength, 0.5 * field.dim()) * std::sqrt(sum);
}

InverseInequalityReport inverse_inequality_check(const SpectralField &field,
                                                 int oversample) {
  if (oversample < 8)
    throw ConfigError("inverse inequality check needs oversampling >= 8");
  InverseInequalityReport r;
  r.linf = linf_norm(synthesize(field, oversample));
  r.l2 = l2_norm(field);
  r.bound = std::pow((2.0 * field.cutoff() + 1.0) / kTorusLength,
                     0.5 * field.dim()) *
            r.l2;
  r.holds = r.linf <= r.bound + 1e-12 * std::max(1.0, r.bound);
  return r;
}

} // namespace logsplit
