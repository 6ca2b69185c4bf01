#include <gtest/gtest.h>

#include <sstream>

#include <boost/math/tools/roots.hpp>

#include <logsplit/errors.hpp>
#include <logsplit/propagator.hpp>

using namespace logsplit;

TEST(PhiA, MultipliesEachModeByItsPhase) {
  SpectralField f(1, 3);
  for (int k = -3; k <= 3; ++k)
    f(k) = cplx(1.0 + k, 0.5);
  const SpectralField g = phi_A(f, 0.37);
  for (int k = -3; k <= 3; ++k)
    EXPECT_NEAR(std::abs(g(k) - f(k) * std::polar(1.0, -k * k * 0.37)), 0.0, 1e-15);
  EXPECT_LT(l2_norm(difference(phi_A(g, -0.37), f)), 1e-14);
}

TEST(SincInverse, MatchesBracketedRoot) {
  for (double c0 : {0.05, 0.1, 0.5, 0.8}) {
    auto f = [c0](double x) { return std::sin(x) / x - c0; };
    auto tol = boost::math::tools::eps_tolerance<double>(50);
    const auto [lo, hi] = boost::math::tools::bisect(f, 1.0, std::numbers::pi, tol);
    EXPECT_NEAR(sinc_inverse(c0), 0.5 * (lo + hi), 1e-12) << "c0=" << c0;
  }
  EXPECT_NEAR(sinc_inverse(0.1), 2.8523, 1e-4);
  EXPECT_THROW(sinc_inverse(0.9), DomainError);
}

TEST(Kc0, WindowAtSmallTime) {
  const Kc0Set s = build_kc0(0.1, 0.01, 100);
  // |k|² between 200·asin(0.1) ≈ 20.03 and 200·2.8523 ≈ 570.5.
  std::vector<int> ks;
  for (const WaveVector &k : s.members)
    ks.push_back(k[0]);
  std::sort(ks.begin(), ks.end());
  std::vector<int> expected;
  for (int k = -23; k <= 23; ++k)
    if (std::abs(k) >= 5)
      expected.push_back(k);
  EXPECT_EQ(ks, expected);
  EXPECT_TRUE(s.contains({5, 0, 0}));
  EXPECT_FALSE(s.contains({4, 0, 0}));
}

TEST(Kc0, WindowLength) {
  EXPECT_NEAR(sinc_inverse(0.1) - std::asin(0.1), 2.75, 0.01);
}

TEST(FreeFlowBound, SingleModeShiftError) {
  SpectralField v(1, 8);
  v(6) = 1.0;
  const double t = 0.02;
  const Theorem21Report r = theorem21_experiment(v, 1.0, t, 0.1);
  const double expected = 2.0 * std::abs(std::sin(36.0 * t / 2.0)) *
                          std::sqrt(2.0 * std::numbers::pi);
  EXPECT_NEAR(r.err, expected, 1e-14);
  EXPECT_NEAR(r.upper,
              std::pow(2.0, 0.5) * std::sqrt(t) * 6.0 * std::sqrt(2.0 * std::numbers::pi),
              1e-13);
  EXPECT_TRUE(r.holds_upper);
  EXPECT_TRUE(r.holds_lower);
  EXPECT_GT(r.lower, 0.0); // 36 lies inside [10.02, 285.2], the K_c0 window at t = 0.02
}

TEST(FreeFlowBound, CsvRow) {
  std::ostringstream os;
  write_theorem21_csv_header(os);
  write_theorem21_csv_row(os, Theorem21Report{0.5, 0.1, 0.1, 1, 2, 0.5, true, true});
  EXPECT_EQ(os.str().substr(0, 20), "r,t,c0,err,upper,low");
  EXPECT_NE(os.str().find("\n0.5,"), std::string::npos);
}
