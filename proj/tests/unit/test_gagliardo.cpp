#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <logsplit/errors.hpp>
#include <logsplit/gagliardo.hpp>
#include <logsplit/initdata.hpp>

using namespace logsplit;
constexpr double pi = std::numbers::pi;

namespace {

double oracle_weight(long n, double s) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto f = [&](double x) {
    if (x < 1e-8) // sin²(nx/2) ≈ n²x²/4 here; avoids 0·∞ at subnormal x
      return 0.25 * n * n * std::pow(x, 1.0 - 2.0 * s);
    const double sn = std::sin(0.5 * n * x);
    return sn * sn * std::pow(x, -1.0 - 2.0 * s);
  };
  // Split at each half period so tanh-sinh sees a smooth integrand per piece.
  double total = 0.0;
  const double width = 2.0 * pi / n;
  for (double a = 0.0; a < pi; a += width)
    total += integrator.integrate(f, a, std::min(pi, a + width));
  return 8.0 * total;
}

} // namespace

TEST(ModeWeight, MatchesIndependentQuadrature) {
  for (double s : {0.15, 0.5, 0.85})
    for (long n : {1L, 2L, 5L, 33L}) {
      const QuadratureValue b = gagliardo_mode_weight(n, s);
      EXPECT_NEAR(b.value, oracle_weight(n, s), 1e-9 * b.value) << "s=" << s << " n=" << n;
      EXPECT_LE(b.rel_error, 1e-8);
    }
}

TEST(ModeWeight, RescaledBranchAgreesWithPanels) {
  QuadratureSpec direct;
  direct.direct_limit = 1L << 30;
  for (double s : {0.2, 0.8})
    for (long n : {257L, 1000L, 3001L}) {
      const double a = gagliardo_mode_weight(n, s).value;
      const double b = gagliardo_mode_weight(n, s, direct).value;
      EXPECT_NEAR(a, b, 1e-12 * b) << "s=" << s << " n=" << n;
    }
}

TEST(ModeWeight, ApproachesContinuumConstant) {
  // B̃_n / n^{2s} -> 8 C_s with C_s = π / (4 Γ(1+2s) sin(πs)).
  const double s = 0.4;
  const double limit = 2.0 * pi / (std::tgamma(1.0 + 2.0 * s) * std::sin(pi * s));
  const double tail = 8.0 * std::pow(pi, -2.0 * s) / (4.0 * s);
  const long n = 100000;
  const double ratio = gagliardo_mode_weight(n, s).value / std::pow(double(n), 2.0 * s);
  EXPECT_NEAR(ratio, limit - tail * std::pow(double(n), -2.0 * s), 1e-6 * limit);
}

TEST(ModeWeight, DomainChecks) {
  EXPECT_THROW(gagliardo_mode_weight(3, 1.0), DomainError);
  EXPECT_THROW(gagliardo_mode_weight(3, 0.0), DomainError);
  EXPECT_EQ(gagliardo_mode_weight(0, 0.5).value, 0.0);
}

TEST(Seminorm, SingleModeIsTorusTimesWeight) {
  SpectralField f(1, 4);
  f(3) = 0.5;
  const GagliardoResult r = gagliardo_seminorm_1d(f, 0.3);
  EXPECT_NEAR(r.double_integral, 2.0 * pi * 0.25 * oracle_weight(3, 0.3), 1e-9);
  SpectralField zero(1, 0);
  EXPECT_EQ(gagliardo_seminorm_1d(zero, 0.3).double_integral, 0.0);
}

TEST(Seminorm, EquivalentToSpectralSeminorm) {
  const ModeRatioBounds b = gagliardo_mode_ratio_bounds(0.6, 300);
  EXPECT_GT(b.min_ratio, 0.0);
  EXPECT_LT(b.max_ratio / b.min_ratio, 10.0);
}

TEST(PowerBound, HoldsForGammaPointThree) {
  const GagliardoBoundReport r = gagliardo_bound_check({0.3, 0}, 0.2, 1024);
  EXPECT_NEAR(r.bound, std::pow(2.0 * pi, 1.2) / 0.12, 1e-10);
  EXPECT_TRUE(r.holds);
  EXPECT_LE(r.value, r.bound);
  EXPECT_LE(r.rel_error, 1e-6);
  EXPECT_THROW(gagliardo_bound_check({0.3, 0}, 0.3), DomainError);
}
