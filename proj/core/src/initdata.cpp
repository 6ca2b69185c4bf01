#include "logsplit/initdata.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "logsplit/coeff_io.hpp"
#include "logsplit/errors.hpp"
#include "logsplit/gagliardo.hpp"
#include "logsplit/quadrature.hpp"

namespace logsplit {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Uniform on [-1, 1) from the top 53 bits of one 64-bit draw.
double symmetric_unit(std::mt19937_64 &rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

// ∫_0^∞ (π + iv/n)^γ e^{-v} dv over [0, 64] in 16 Gauss panels.
cplx endpoint_integral(double gamma, double n) {
  static const GaussRule &rule = gauss_legendre(32);
  const double pi = std::numbers::pi;
  cplx total{};
  constexpr int panels = 16;
  constexpr double width = 4.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * width;
    cplx panel{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double v = mid + 0.5 * width * rule.nodes[i];
      panel += rule.weights[i] * std::pow(cplx(pi, v / n), gamma) * std::exp(-v);
    }
    total += 0.5 * width * panel;
  }
  return total;
}

} // namespace

// ---------------------------------------------------------------- Gausson

double GaussonParams::a() const noexcept {
  return -lambda * (static_cast<double>(dim) - std::log(b * b));
}

void GaussonParams::validate() const {
  if (dim < 1 || dim > kMaxDim)
    throw ConfigError("Gausson dimension out of range");
  if (!std::isfinite(lambda) || lambda == 0.0)
    throw ConfigError("Gausson lambda must be finite and nonzero");
  if (!std::isfinite(b) || b == 0.0)
    throw ConfigError("Gausson amplitude b must be finite and nonzero");
  for (double z : zeta)
    if (!std::isfinite(z))
      throw ConfigError("Gausson velocity must be finite");
}

cplx gausson_exact(const GaussonParams &p, std::span<const double> x, double t) {
  double phase = -(p.a()) * t;
  double dist2 = 0.0;
  for (int i = 0; i < p.dim; ++i) {
    phase += x[i] * p.zeta[i] - p.zeta[i] * p.zeta[i] * t;
    const double y = x[i] - 2.0 * p.zeta[i] * t;
    dist2 += y * y;
  }
  return p.b * std::exp(cplx(0.5 * p.lambda * dist2, phase));
}

cplx gausson_exact(const GaussonParams &p, double x, double t) {
  const double pt[1] = {x};
  return gausson_exact(p, pt, t);
}

cplx gausson_time_derivative(const GaussonParams &p, std::span<const double> x,
                             double t) {
  double zeta2 = 0.0;
  double drift = 0.0;
  for (int i = 0; i < p.dim; ++i) {
    zeta2 += p.zeta[i] * p.zeta[i];
    drift += p.zeta[i] * (x[i] - 2.0 * p.zeta[i] * t);
  }
  const cplx rate(-2.0 * p.lambda * drift, -(p.a() + zeta2));
  return rate * gausson_exact(p, x, t);
}

double gausson_residual(const GaussonParams &p, int N, double t, int oversample) {
  p.validate();
  if (p.dim != 1)
    throw ConfigError("gausson_residual is implemented for d = 1");
  const TorusGrid grid = TorusGrid::oversampled(1, N, oversample);
  PhysicalField u(grid);
  for (int j = 0; j < grid.nodes_per_dim(); ++j)
    u[static_cast<std::size_t>(j)] = gausson_exact(p, grid.node(j), t);
  const PhysicalField lap = synthesize_on(laplacian(forward(u, N)), grid);

  double worst = 0.0;
  for (int j = 0; j < grid.nodes_per_dim(); ++j) {
    const auto jj = static_cast<std::size_t>(j);
    const double x[1] = {grid.node(j)};
    const cplx z = u[jj];
    const double r = std::abs(z);
    const cplx nonlin = r == 0.0 ? cplx{} : p.lambda * z * (2.0 * std::log(r));
    const cplx res = cplx(0.0, 1.0) * gausson_time_derivative(p, x, t) + lap[jj] - nonlin;
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

// ------------------------------------------------------------ random H^s

void RandomHsParams::validate() const {
  if (!(s > 0.0 && s <= 2.0))
    throw ConfigError("random data needs 0 < s <= 2");
  if (!(beta > 0.5))
    throw ConfigError("random data needs beta > 1/2");
  if (K < 1)
    throw ConfigError("random data needs K >= 1");
}

SpectralField random_hs_coeffs(const RandomHsParams &p) {
  p.validate();
  SpectralField out(1, p.K);
  std::mt19937_64 rng(p.seed);
  const double expo = -(p.s + p.beta);
  for (int n = 1; n <= p.K; ++n) {
    const double scale = std::pow(static_cast<double>(n), expo);
    for (int k : {n, -n}) {
      const double re = symmetric_unit(rng);
      const double im = symmetric_unit(rng);
      out(k) = cplx(re, im) * scale;
    }
  }
  return out;
}

double random_hs_norm_bound(const RandomHsParams &p) {
  return std::pow(2.0, p.s + 1.0) / (2.0 * p.beta - 1.0);
}

// ------------------------------------------------------ power singularity

void PowerSingularParams::validate() const {
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw ConfigError("power data needs 0 < gamma <= 1");
}

double power_profile_coeff(double gamma, long n) {
  const double pi = std::numbers::pi;
  if (n == 0)
    return std::pow(pi, gamma) / (gamma + 1.0);
  const double nn = static_cast<double>(std::abs(n));
  // ∫_0^π x^γ e^{inx} dx, deforming onto the rays [0, i∞) and [π, π + i∞).
  const cplx ray0 = std::tgamma(gamma + 1.0) *
                    std::polar(1.0, 0.5 * pi * (gamma + 1.0)) *
                    std::pow(nn, -(gamma + 1.0));
  const double sign = (std::abs(n) % 2 == 0) ? 1.0 : -1.0;
  const cplx rayPi = cplx(0.0, sign) * endpoint_integral(gamma, nn) / nn;
  const cplx full = ray0 - rayPi;
  const double value = full.real() / pi;
  if (!std::isfinite(value))
    throw QuadratureError("power coefficient failed at mode " + std::to_string(n),
                          INFINITY);
  return value;
}

SpectralField power_singular_coeffs(const PowerSingularParams &p, int K) {
  p.validate();
  if (K < std::abs(p.ell) + 1)
    throw ConfigError("power data needs K >= |ell| + 1");
  SpectralField out(1, K);
  for (int k = -K; k <= K; ++k)
    out(k) = power_profile_coeff(p.gamma, static_cast<long>(k) - p.ell);
  return out;
}

GagliardoBoundReport gagliardo_bound_check(const PowerSingularParams &p, double s,
                                           int K) {
  p.validate();
  if (!(s > 0.0 && s < p.gamma))
    throw DomainError("Gagliardo bound needs 0 < s < gamma");
  const PowerSingularParams profile{p.gamma, 0};
  const SpectralField c = power_singular_coeffs(profile, K);
  const GagliardoResult g = gagliardo_seminorm_1d(c, s);
  GagliardoBoundReport r;
  r.gamma = p.gamma;
  r.s = s;
  r.K = K;
  r.value = g.double_integral;
  r.rel_error = g.max_rel_error;
  const double e = 2.0 * p.gamma - 2.0 * s + 1.0;
  r.bound = std::pow(kTorusLength, e) / ((p.gamma - s) * e);
  r.holds = r.value <= r.bound;
  return r;
}

// ----------------------------------------------------------- InitialData

const char *family_name(DataFamily f) noexcept {
  switch (f) {
  case DataFamily::Gausson:
    return "gausson";
  case DataFamily::RandomHs:
    return "random_hs";
  case DataFamily::PowerSingular:
    return "power";
  case DataFamily::CoefficientFile:
    return "file";
  }
  return "unknown";
}

std::vector<std::pair<std::string, std::string>> InitialData::describe() const {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("family", family_name(family));
  kv.emplace_back("dim", std::to_string(dim));
  std::visit(
      [&](const auto &q) {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, GaussonParams>) {
          kv.emplace_back("lambda", fmt(q.lambda));
          kv.emplace_back("b", fmt(q.b));
          kv.emplace_back("zeta", fmt(q.zeta[0]));
        } else if constexpr (std::is_same_v<T, RandomHsParams>) {
          kv.emplace_back("s", fmt(q.s));
          kv.emplace_back("beta", fmt(q.beta));
          kv.emplace_back("K", std::to_string(q.K));
          kv.emplace_back("seed", std::to_string(q.seed));
        } else if constexpr (std::is_same_v<T, PowerSingularParams>) {
          kv.emplace_back("gamma", fmt(q.gamma));
          kv.emplace_back("ell", std::to_string(q.ell));
        } else {
          kv.emplace_back("path", q.string());
        }
      },
      params);
  if (coeffs)
    kv.emplace_back("coefficient_cutoff", std::to_string(coeffs->cutoff()));
  kv.emplace_back("hs_index", fmt(hs_index));
  kv.emplace_back("hs_norm", fmt(hs_norm));
  return kv;
}

InitialData make_gausson(const GaussonParams &p, double s) {
  p.validate();
  InitialData d;
  d.family = DataFamily::Gausson;
  d.params = p;
  d.dim = p.dim;
  d.hs_index = s;
  d.evaluator = [p](std::span<const double> x) { return gausson_exact(p, x, 0.0); };
  if (p.dim == 1) {
    constexpr int cutoff = 256;
    const TorusGrid grid = TorusGrid::oversampled(1, cutoff, 4);
    PhysicalField u(grid);
    for (int j = 0; j < grid.nodes_per_dim(); ++j)
      u[static_cast<std::size_t>(j)] = gausson_exact(p, grid.node(j), 0.0);
    d.hs_norm = hs_norm(forward(u, cutoff), s);
  } else {
    d.hs_norm = std::abs(p.b) * std::pow(std::numbers::pi / -p.lambda, 0.25 * p.dim);
  }
  return d;
}

InitialData make_random_hs(const RandomHsParams &p) {
  InitialData d;
  d.family = DataFamily::RandomHs;
  d.params = p;
  d.hs_index = p.s;
  d.coeffs = random_hs_coeffs(p);
  d.hs_norm = hs_norm(*d.coeffs, p.s);
  return d;
}

InitialData make_power_singular(const PowerSingularParams &p, int K, double s) {
  InitialData d;
  d.family = DataFamily::PowerSingular;
  d.params = p;
  d.hs_index = s;
  d.coeffs = power_singular_coeffs(p, K);
  d.hs_norm = hs_norm(*d.coeffs, s);
  return d;
}

InitialData load_coefficient_data(const std::filesystem::path &path, double s) {
  CoefficientFile file = read_coefficients(path);
  InitialData d;
  d.family = DataFamily::CoefficientFile;
  d.params = path;
  d.dim = static_cast<int>(file.header.dim);
  d.hs_index = s;
  d.hs_norm = hs_norm(file.field, s);
  d.coeffs = std::move(file.field);
  return d;
}

} // namespace logsplit
