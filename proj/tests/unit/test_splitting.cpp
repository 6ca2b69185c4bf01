#include <gtest/gtest.h>

#include <random>

#include <logsplit/errors.hpp>
#include <logsplit/splitting.hpp>

#include "oracles.hpp"

using namespace logsplit;

namespace {

InitialData list_data(const SpectralField &f) {
  InitialData u0;
  u0.family = DataFamily::CoefficientFile;
  u0.params = std::filesystem::path("memory");
  u0.coeffs = f;
  u0.hs_norm = l2_norm(f);
  return u0;
}

SpectralField smooth_field(int K, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> g;
  SpectralField f(1, K);
  for (int k = -K; k <= K; ++k)
    f(k) = cplx(g(gen), g(gen)) * std::exp(-0.3 * std::abs(k));
  return f;
}

} // namespace

TEST(SolverConfig, StepCountMustBeInteger) {
  SolverConfig c;
  c.tau = 0x1.0p-7;
  EXPECT_EQ(c.step_count(), 128);
  c.tau = 0.3;
  try {
    c.validate();
    FAIL() << "expected ConfigError";
  } catch (const ConfigError &e) {
    EXPECT_NE(std::string(e.what()).find("integer"), std::string::npos);
  }
}

TEST(SolverConfig, RejectsBadParameters) {
  SolverConfig c;
  c.eps = -1.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = SolverConfig{};
  c.N = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = SolverConfig{};
  c.lambda = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = SolverConfig{};
  c.snapshot_times = {0.5, 0.5};
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(SolverConfig, SnapshotTimesMapToNearestStep) {
  SolverConfig c;
  c.tau = 0x1.0p-7;
  c.snapshot_times = {0.4, 0.7, 1.0};
  const auto steps = c.snapshot_steps();
  EXPECT_EQ(steps, (std::vector<long>{51, 90, 128}));
}

TEST(Stepper, OneStepMatchesLonghandOracle) {
  const SpectralField f = smooth_field(6, 1);
  SolverConfig c;
  c.lambda = -3.0;
  c.tau = 0.01;
  c.N = 6;
  c.oversample = 4;
  Stepper st(c);
  SolverState s = st.init(list_data(f));
  st.step(s);
  auto fc = f.coeffs();
  const auto ref = oracle::split_step({fc.begin(), fc.end()}, c.lambda, c.tau, 4);
  for (int k = -6; k <= 6; ++k)
    EXPECT_NEAR(std::abs(s.coeffs(k) - ref[k + 6]), 0.0, 1e-13) << "k=" << k;
  EXPECT_EQ(s.step_index, 1);
}

TEST(Stepper, InitProjectsAndPads) {
  const SpectralField f = smooth_field(10, 2);
  SolverConfig c;
  c.N = 4;
  const SolverState s = Stepper(c).init(list_data(f));
  EXPECT_EQ(s.coeffs.cutoff(), 4);
  EXPECT_EQ(s.coeffs(4), f(4));
  c.N = 20;
  const SolverState p = Stepper(c).init(list_data(f));
  EXPECT_EQ(p.coeffs(15), cplx(0.0));
}

TEST(Run, MassIsNonIncreasing) {
  SolverConfig c;
  c.lambda = -1.0;
  c.tau = 1.0 / 64;
  c.N = 16;
  c.snapshot_times = {0.5, 1.0};
  const Trajectory t = run(list_data(smooth_field(40, 3)), c);
  ASSERT_EQ(t.mass_trace.size(), 65u);
  for (std::size_t i = 1; i < t.mass_trace.size(); ++i)
    EXPECT_LE(t.mass_trace[i].mass, t.mass_trace[i - 1].mass * (1.0 + 1e-12));
  EXPECT_EQ(t.snapshots.size(), 2u);
  EXPECT_EQ(t.at(0.5).step, 32);
  EXPECT_THROW(t.at(0.25), ConfigError);
}

TEST(Run, GaussonIsNearlyStationaryInModulus) {
  SolverConfig c;
  c.lambda = -16.0;
  c.tau = 1.0 / 256;
  c.N = 200;
  c.snapshot_times = {1.0};
  const InitialData u0 = make_gausson(GaussonParams{});
  const Trajectory t = run(u0, c);
  const double m0 = t.mass_trace.front().mass;
  EXPECT_NEAR(t.mass_trace.back().mass / m0, 1.0, 1e-12);
}

TEST(Run, NonFiniteDataAborts) {
  SpectralField f = smooth_field(4, 5);
  f(1) = cplx(INFINITY, 0.0);
  SolverConfig c;
  c.N = 4;
  c.tau = 0.5;
  EXPECT_THROW(run(list_data(f), c), Error);
}

TEST(Run, MassStrideKeepsFinalStep) {
  SolverConfig c;
  c.tau = 1.0 / 10;
  c.N = 8;
  c.mass_stride = 4;
  const Trajectory t = run(list_data(smooth_field(8, 6)), c);
  EXPECT_EQ(t.mass_trace.back().step, 10);
  EXPECT_EQ(t.mass_trace[1].step, 4);
}
