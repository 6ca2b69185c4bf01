#include <gtest/gtest.h>

#include <random>

#include <logsplit/errors.hpp>
#include <logsplit/spectral.hpp>

#include "oracles.hpp"

using namespace logsplit;

namespace {

SpectralField random_field(int K, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SpectralField f(1, K);
  for (int k = -K; k <= K; ++k)
    f(k) = cplx(u(gen), u(gen)) / (1.0 + k * k);
  return f;
}

std::vector<cplx> as_vector(const SpectralField &f) {
  auto c = f.coeffs();
  return {c.begin(), c.end()};
}

} // namespace

TEST(TorusGrid, OversampledSizeIsNextPowerOfTwo) {
  EXPECT_EQ(TorusGrid::oversampled(1, 10, 4).nodes_per_dim(), 128); // 4*21 = 84
  EXPECT_EQ(TorusGrid::oversampled(1, 200, 4).nodes_per_dim(), 2048);
  EXPECT_EQ(TorusGrid::oversampled(1, 0, 1).nodes_per_dim(), 1);
  EXPECT_DOUBLE_EQ(TorusGrid(1, 3, 8).node(0), -std::numbers::pi);
}

TEST(TorusGrid, RejectsAliasingResolution) {
  EXPECT_THROW(TorusGrid(1, 10, 20), ConfigError);
  EXPECT_NO_THROW(TorusGrid(1, 10, 21));
}

TEST(Spectral, SynthesizeMatchesDirectSum) {
  const SpectralField f = random_field(7, 3);
  const PhysicalField u = synthesize(f, 4);
  const auto ref = oracle::synth(as_vector(f), u.grid().nodes_per_dim());
  for (std::size_t j = 0; j < u.size(); ++j)
    EXPECT_NEAR(std::abs(u[j] - ref[j]), 0.0, 1e-13);
}

TEST(Spectral, ForwardMatchesDirectSum) {
  const TorusGrid g(1, 9, 48);
  PhysicalField u(g);
  std::vector<cplx> vals(48);
  for (int j = 0; j < 48; ++j) {
    const double x = g.node(j);
    vals[j] = u[j] = cplx(std::exp(std::cos(x)), std::sin(3 * x) * x);
  }
  const SpectralField f = forward(u, 9);
  const auto ref = oracle::dft(vals, 9);
  for (int k = -9; k <= 9; ++k)
    EXPECT_NEAR(std::abs(f(k) - ref[k + 9]), 0.0, 1e-14) << "k=" << k;
}

TEST(Spectral, RoundTripIsExactForTrigPolynomials) {
  const SpectralField f = random_field(12, 5);
  const SpectralField g = forward(synthesize(f, 2), 12);
  EXPECT_LT(l2_norm(difference(f, g)), 1e-14);
}

TEST(Spectral, ParsevalBetweenCoefficientAndNodalNorms) {
  const SpectralField f = random_field(20, 11);
  EXPECT_NEAR(l2_norm(f), oracle::l2(as_vector(f)), 1e-14);
  EXPECT_NEAR(l2_norm(synthesize(f, 4)), l2_norm(f), 1e-13);
}

TEST(Spectral, SobolevNormsOfSingleMode) {
  SpectralField f(1, 5);
  f(3) = 1.0;
  const double root = std::sqrt(2.0 * std::numbers::pi);
  EXPECT_NEAR(hs_seminorm(f, 0.7), root * std::pow(3.0, 0.7), 1e-13);
  EXPECT_NEAR(hs_norm(f, 0.7), root * std::pow(10.0, 0.35), 1e-13);
  f(0) = 2.0;
  EXPECT_NEAR(hs_seminorm(f, 1.0), root * 3.0, 1e-13);
}

TEST(Spectral, ProjectResizeAndDifference) {
  const SpectralField f = random_field(10, 2);
  const SpectralField p = project(f, 4);
  EXPECT_EQ(p.cutoff(), 4);
  EXPECT_EQ(p(-4), f(-4));
  EXPECT_THROW(project(p, 6), ConfigError);
  const SpectralField r = resize(p, 10);
  EXPECT_EQ(r(7), cplx(0.0));
  const SpectralField tail = difference(f, r);
  EXPECT_EQ(tail(4), cplx(0.0));
  EXPECT_EQ(tail(5), f(5));
}

TEST(Spectral, DerivativeAndLaplacianMultipliers) {
  const SpectralField f = random_field(6, 9);
  const SpectralField d = derivative(f, 0);
  const SpectralField l = laplacian(f);
  for (int k = -6; k <= 6; ++k) {
    EXPECT_EQ(d(k), cplx(0.0, k) * f(k));
    EXPECT_EQ(l(k), -double(k * k) * f(k));
  }
}

TEST(Spectral, NonFiniteCoefficientIsReported) {
  SpectralField f(1, 3);
  f(2) = cplx(std::nan(""), 0.0);
  EXPECT_THROW(f.require_finite(), NonFiniteError);
}

TEST(Spectral, InverseInequalityOnExtremalPolynomial) {
  // The Dirichlet kernel attains ‖φ‖_∞ = ((2N+1)/|T|)^{1/2}‖φ‖ exactly at x = 0.
  SpectralField f(1, 8);
  for (int k = -8; k <= 8; ++k)
    f(k) = 1.0;
  const InverseInequalityReport r = inverse_inequality_check(f, 8);
  EXPECT_TRUE(r.holds);
  EXPECT_NEAR(r.linf, r.bound, 1e-12 * r.bound);
}
