#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <logsplit/errors.hpp>
#include <logsplit/initdata.hpp>

using namespace logsplit;
constexpr double pi = std::numbers::pi;

TEST(Gausson, NormMatchesErfClosedForm) {
  // ‖u₀‖² = ∫_{-π}^{π} e^{λx²} dx = sqrt(π/|λ|) erf(π sqrt|λ|).
  const double lambda = -16.0;
  const double oracle = std::sqrt(std::sqrt(pi / 16.0) * std::erf(pi * 4.0));
  const InitialData u0 = make_gausson({lambda, 1.0, {}, 1});
  EXPECT_NEAR(u0.hs_norm, oracle, 1e-13);
  EXPECT_NEAR(oracle, 0.66567, 1e-5);
}

TEST(Gausson, BoundaryValue) {
  const GaussonParams p;
  const double expected = std::exp(-8.0 * pi * pi);
  EXPECT_NEAR(std::abs(gausson_exact(p, pi, 0.0)), expected, 1e-12 * expected);
  EXPECT_NEAR(std::abs(gausson_exact(p, -pi, 0.0)), 5.12e-35, 0.01e-35);
}

TEST(Gausson, TimeDerivativeMatchesFiniteDifference) {
  const GaussonParams p;
  const double h = 1e-6;
  for (double x : {-0.3, 0.0, 0.2}) {
    const std::array<double, 1> xs{x};
    const cplx fd = (gausson_exact(p, x, 0.5 + h) - gausson_exact(p, x, 0.5 - h)) / (2 * h);
    const cplx d = gausson_time_derivative(p, xs, 0.5);
    EXPECT_NEAR(std::abs(fd - d), 0.0, 1e-6 * std::abs(d));
  }
}

TEST(Gausson, ResidualIsAtRoundoffLevel) {
  for (double t : {0.0, 0.4, 1.0})
    EXPECT_LE(gausson_residual(GaussonParams{}, 200, t), 1e-10) << "t=" << t;
}

TEST(RandomHs, DeterministicAndPrefixCompatible) {
  RandomHsParams small{0.8, 0.51, 50, 7}, large{0.8, 0.51, 400, 7};
  const SpectralField a = random_hs_coeffs(small);
  const SpectralField b = random_hs_coeffs(large);
  const SpectralField a2 = random_hs_coeffs(small);
  for (int k = -50; k <= 50; ++k) {
    EXPECT_EQ(a(k), b(k));
    EXPECT_EQ(a(k), a2(k));
  }
  EXPECT_EQ(a(0), cplx(0.0));
  for (int k = 1; k <= 400; ++k) {
    const double scale = std::pow(double(k), 0.8 + 0.51);
    EXPECT_LE(std::abs(b(k).real()) * scale, 1.0 + 1e-15);
    EXPECT_LE(std::abs(b(-k).imag()) * scale, 1.0 + 1e-15);
  }
  RandomHsParams other = small;
  other.seed = 8;
  EXPECT_NE(random_hs_coeffs(other)(1), a(1));
}

TEST(RandomHs, NormBelowAnalyticBound) {
  const RandomHsParams p{0.8, 0.51, 20000, 42};
  const InitialData u0 = make_random_hs(p);
  EXPECT_LE(u0.hs_norm * u0.hs_norm / (2 * pi), random_hs_norm_bound(p));
  EXPECT_NEAR(random_hs_norm_bound(p), std::pow(2.0, 1.8) / 0.02, 1e-12);
  EXPECT_THROW((RandomHsParams{0.8, 0.5, 10, 1}.validate()), ConfigError);
}

TEST(PowerCoefficients, MatchTanhSinhQuadrature) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  for (double gamma : {0.3, 0.5, 0.9})
    for (long n : {0L, 1L, 2L, 7L, 20L}) {
      auto f = [&](double x) { return std::pow(x, gamma) * std::cos(n * x); };
      const double oracle = integrator.integrate(f, 0.0, pi) / pi;
      EXPECT_NEAR(power_profile_coeff(gamma, n), oracle, 1e-12)
          << "gamma=" << gamma << " n=" << n;
    }
}

TEST(PowerCoefficients, LinearProfileClosedForm) {
  // (1/π)∫_0^π x cos(nx) dx = ((-1)^n - 1)/(π n²).
  for (long n = 1; n <= 200; n += 13) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    EXPECT_NEAR(power_profile_coeff(1.0, n), (sign - 1.0) / (pi * n * n), 1e-15);
  }
  EXPECT_NEAR(power_profile_coeff(1.0, 0), pi / 2.0, 1e-15);
}

TEST(PowerCoefficients, PhaseShiftsTheProfile) {
  const SpectralField c = power_singular_coeffs({0.3, 2}, 40);
  for (int k = -38; k <= 38; ++k)
    EXPECT_NEAR(std::abs(c(k) - power_profile_coeff(0.3, k - 2)), 0.0, 1e-15);
  EXPECT_THROW(power_singular_coeffs({0.3, 2}, 2), ConfigError);
}

TEST(PowerCoefficients, SynthesisRecoversProfileAwayFromZero) {
  const SpectralField c = power_singular_coeffs({0.5, 0}, 4096);
  const PhysicalField u = synthesize(c, 2);
  const TorusGrid &g = u.grid();
  for (int j = 0; j < g.nodes_per_dim(); j += 997) {
    const double x = g.node(j);
    if (std::abs(x) < 0.5)
      continue;
    EXPECT_NEAR(u[j].real(), std::sqrt(std::abs(x)), 2e-3) << "x=" << x;
  }
}

TEST(InitialData, DescribeNamesTheFamily) {
  const InitialData u0 = make_power_singular({0.3, 2}, 64, 0.8);
  EXPECT_EQ(std::string(family_name(u0.family)), "power");
  bool found = false;
  for (const auto &[k, v] : u0.describe())
    found = found || (k == "gamma");
  EXPECT_TRUE(found);
}
