#include "logsplit/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "logsplit/errors.hpp"

namespace logsplit {

namespace {

void require_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw DomainError("regularisation needs eps > 0, got " + std::to_string(eps));
}

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw DomainError("flow time must be finite and >= 0");
}

// Phase rotation by -2λt ln(m), m = |w| or |w| + ε.
inline cplx rotate(cplx w, double lambda, double t, double m) noexcept {
  return w * std::polar(1.0, -2.0 * lambda * t * std::log(m));
}

// Nodal gradients ∂_i w for every axis on the given grid.
std::vector<PhysicalField> nodal_gradient(const SpectralField &w, const TorusGrid &grid) {
  std::vector<PhysicalField> out;
  out.reserve(static_cast<std::size_t>(w.dim()));
  for (int axis = 0; axis < w.dim(); ++axis)
    out.push_back(synthesize_on(derivative(w, axis), grid));
  return out;
}

double nodal_l2(const std::vector<double> &sq, const TorusGrid &grid) {
  double sum = 0.0;
  for (double v : sq)
    sum += v;
  return std::sqrt(grid.cell_volume() * sum);
}

} // namespace

void NonlinParams::validate() const {
  if (!std::isfinite(lambda) || lambda == 0.0)
    throw ConfigError("lambda must be finite and nonzero");
  if (!std::isfinite(eps) || eps < 0.0)
    throw ConfigError("eps must be finite and >= 0, got " + std::to_string(eps));
}

cplx log_nonlinearity(cplx z) noexcept {
  const double r = std::abs(z);
  if (r == 0.0)
    return {};
  return z * (2.0 * std::log(r));
}

cplx log_nonlinearity_eps(cplx z, double eps) {
  require_eps(eps);
  return z * (2.0 * std::log(std::abs(z) + eps));
}

void apply_phi_B(std::span<cplx> values, double lambda, double t) noexcept {
  for (cplx &w : values) {
    const double r = std::abs(w);
    if (r != 0.0)
      w = rotate(w, lambda, t, r);
  }
}

void apply_phi_B_eps(std::span<cplx> values, double lambda, double t, double eps) {
  require_eps(eps);
  for (cplx &w : values)
    w = rotate(w, lambda, t, std::abs(w) + eps);
}

PhysicalField phi_B(const PhysicalField &field, const NonlinParams &params, double t) {
  params.validate();
  require_time(t);
  field.require_finite();
  PhysicalField out = field;
  apply_phi_B(out.values(), params.lambda, t);
  return out;
}

PhysicalField phi_B_eps(const PhysicalField &field, const NonlinParams &params,
                        double t) {
  params.validate();
  require_time(t);
  field.require_finite();
  PhysicalField out = field;
  apply_phi_B_eps(out.values(), params.lambda, t, params.eps);
  return out;
}

double Inequality::slack() const noexcept { return 1e-12 * std::max(1.0, rhs); }

Inequality regularization_gap_check(cplx z, double eps) {
  return {std::abs(log_nonlinearity_eps(z, eps) - log_nonlinearity(z)), 2.0 * eps};
}

HolderPairReport holder_pair_check(cplx z1, cplx z2, double eps) {
  require_eps(eps);
  const double zeta = std::max(std::abs(z1), std::abs(z2));
  const double factor = 2.0 * (std::abs(std::log(zeta + eps)) + 1.0);
  const double dz = std::abs(z1 - z2);
  HolderPairReport r;
  r.regularized = {
      std::abs(log_nonlinearity_eps(z2, eps) - log_nonlinearity_eps(z1, eps)),
      factor * dz};
  r.unregularized = {std::abs(log_nonlinearity(z1) - log_nonlinearity(z2)),
                     4.0 * eps + factor * dz};
  return r;
}

Inequality ch_monotonicity_check(cplx z1, cplx z2) noexcept {
  const cplx df = log_nonlinearity(z1) - log_nonlinearity(z2);
  const cplx dz = z1 - z2;
  return {std::abs((df * std::conj(dz)).imag()), 2.0 * std::norm(dz)};
}

Inequality phi_B_pair_check(cplx a, cplx b, double lambda, double t) noexcept {
  cplx v[2] = {a, b};
  apply_phi_B(v, lambda, t);
  return {std::abs(v[0] - v[1]), (1.0 + 2.0 * std::abs(lambda) * t) * std::abs(a - b)};
}

Inequality phi_B_eps_gap_check(cplx w, double lambda, double t, double eps) {
  cplx a[1] = {w};
  cplx b[1] = {w};
  apply_phi_B(a, lambda, t);
  apply_phi_B_eps(b, lambda, t, eps);
  return {std::abs(a[0] - b[0]), 2.0 * std::abs(lambda) * t * eps};
}

Inequality phi_B_l2_lipschitz_check(const PhysicalField &u, const PhysicalField &v,
                                    double lambda, double t) {
  if (!(u.grid() == v.grid()))
    throw ConfigError("Lipschitz check needs fields on one grid");
  PhysicalField pu = u;
  PhysicalField pv = v;
  apply_phi_B(pu.values(), lambda, t);
  apply_phi_B(pv.values(), lambda, t);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    num += std::norm(pu[j] - pv[j]);
    den += std::norm(u[j] - v[j]);
  }
  const double h = u.grid().cell_volume();
  return {std::sqrt(h * num),
          (1.0 + 2.0 * std::abs(lambda) * t) * std::sqrt(h * den)};
}

Inequality phi_B_node_pair_check(const PhysicalField &w, double lambda, double t) {
  PhysicalField pw = w;
  apply_phi_B(pw.values(), lambda, t);
  const double L = 1.0 + 2.0 * std::abs(lambda) * t;
  Inequality worst{0.0, 0.0};
  double best_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      const Inequality q{std::abs(pw[i] - pw[j]), L * std::abs(w[i] - w[j])};
      const double m = q.margin() + q.slack();
      if (m < best_margin) {
        best_margin = m;
        worst = q;
      }
    }
  return worst;
}

Inequality phi_B_eps_gradient_check(const SpectralField &w, double lambda, double t,
                                    double eps, int oversample) {
  require_eps(eps);
  const TorusGrid grid = TorusGrid::oversampled(w.dim(), w.cutoff(), oversample);
  const PhysicalField wv = synthesize_on(w, grid);
  const auto grad = nodal_gradient(w, grid);

  // ∇Φ = e^{iθ}(∇w + i w ∇θ), θ = -2λt ln(|w|+ε), ∇|w| = Re(w̄∇w)/|w|.
  std::vector<double> sq(wv.size(), 0.0);
  for (std::size_t j = 0; j < wv.size(); ++j) {
    const cplx z = wv[j];
    const double r = std::abs(z);
    const cplx phase = std::polar(1.0, -2.0 * lambda * t * std::log(r + eps));
    for (const PhysicalField &g : grad) {
      cplx d = g[j];
      if (r != 0.0) {
        const double dr = (std::conj(z) * g[j]).real() / r;
        d += cplx(0.0, -2.0 * lambda * t * dr / (r + eps)) * z;
      }
      sq[j] += std::norm(phase * d);
    }
  }
  return {nodal_l2(sq, grid),
          (1.0 + 2.0 * std::abs(lambda) * t) * hs_seminorm(w, 1.0)};
}

LogL2Report log_l2_stability_check(const PhysicalField &u, const PhysicalField &v,
                                   double eps) {
  require_eps(eps);
  if (eps >= 1.0)
    throw DomainError("L2 stability bound needs 0 < eps < 1");
  if (!(u.grid() == v.grid()))
    throw ConfigError("L2 stability check needs fields on one grid");
  LogL2Report r;
  r.upsilon = std::max({std::abs(std::log(eps)), std::log(linf_norm(u) + 1.0),
                        std::log(linf_norm(v) + 1.0)}) +
              1.0;
  double reg = 0.0;
  double unreg = 0.0;
  double diff = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    reg += std::norm(log_nonlinearity_eps(u[j], eps) - log_nonlinearity_eps(v[j], eps));
    unreg += std::norm(log_nonlinearity(u[j]) - log_nonlinearity(v[j]));
    diff += std::norm(u[j] - v[j]);
  }
  const double h = u.grid().cell_volume();
  const double du = std::sqrt(h * diff);
  const double omega = std::pow(kTorusLength, u.grid().dim());
  r.regularized = {std::sqrt(h * reg), 2.0 * r.upsilon * du};
  r.unregularized = {std::sqrt(h * unreg),
                     4.0 * std::sqrt(omega) * eps + 2.0 * r.upsilon * du};
  return r;
}

Inequality log_hs_stability_check(const SpectralField &u, double eps, int s,
                                  int oversample) {
  require_eps(eps);
  if (eps >= 1.0)
    throw DomainError("H^s stability bound needs 0 < eps < 1");
  if (s != 0 && s != 1)
    throw DomainError("H^s stability check supports s = 0 or s = 1 only");
  const TorusGrid grid = TorusGrid::oversampled(u.dim(), u.cutoff(), oversample);
  const PhysicalField uv = synthesize_on(u, grid);
  const double ups =
      std::max(std::abs(std::log(eps)), std::log(linf_norm(uv) + 1.0)) + 1.0;

  std::vector<double> sq(uv.size(), 0.0);
  if (s == 0) {
    for (std::size_t j = 0; j < uv.size(); ++j)
      sq[j] = std::norm(log_nonlinearity_eps(uv[j], eps));
    return {nodal_l2(sq, grid), 2.0 * ups * l2_norm(u)};
  }

  // ∇f^ε(u) = 2 ln(|u|+ε) ∇u + 2u ∇|u| / (|u|+ε).
  const auto grad = nodal_gradient(u, grid);
  for (std::size_t j = 0; j < uv.size(); ++j) {
    const cplx z = uv[j];
    const double r = std::abs(z);
    const double lg = std::log(r + eps);
    for (const PhysicalField &g : grad) {
      cplx d = 2.0 * lg * g[j];
      if (r != 0.0)
        d += 2.0 * z * ((std::conj(z) * g[j]).real() / r) / (r + eps);
      sq[j] += std::norm(d);
    }
  }
  return {nodal_l2(sq, grid), 2.0 * ups * hs_seminorm(u, 1.0)};
}

} // namespace logsplit
