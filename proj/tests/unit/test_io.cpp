#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include <logsplit/checksum.hpp>
#include <logsplit/coeff_io.hpp>
#include <logsplit/errors.hpp>
#include <logsplit/initdata.hpp>
#include <logsplit/trajectory_io.hpp>

using namespace logsplit;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string &name) {
  const fs::path p = fs::temp_directory_path() / ("logsplit_io_" + name);
  fs::remove_all(p);
  return p;
}

} // namespace

TEST(Checksum, KnownDigest) {
  EXPECT_EQ(sha256_hex(std::string_view("abc")),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(CoefficientIo, BinaryRoundTripIsBitExact) {
  const SpectralField f = random_hs_coeffs({0.8, 0.51, 300, 9});
  CoefficientHeader h;
  h.cutoff = 300;
  h.seed = 9;
  h.s = 0.8;
  h.beta = 0.51;
  std::stringstream buf;
  write_coefficients(buf, f, h);
  const CoefficientFile back = read_coefficients(buf);
  EXPECT_EQ(back.header.seed, 9u);
  EXPECT_EQ(back.header.beta, 0.51);
  ASSERT_EQ(back.field.cutoff(), 300);
  for (int k = -300; k <= 300; ++k)
    EXPECT_EQ(back.field(k), f(k));
}

TEST(CoefficientIo, RejectsDamagedInput) {
  std::stringstream bad("not a coefficient file at all....................");
  EXPECT_THROW(read_coefficients(bad), FormatError);

  const SpectralField f = random_hs_coeffs({0.8, 0.51, 10, 1});
  std::stringstream buf;
  write_coefficients(buf, f, CoefficientHeader{1, 10, 1, 0.8, 0.51});
  std::string bytes = buf.str();
  bytes.resize(bytes.size() - 8);
  std::stringstream truncated(bytes);
  EXPECT_THROW(read_coefficients(truncated), FormatError);
  EXPECT_THROW(read_coefficients(fs::path("/nonexistent/file.bin")), FormatError);
}

TEST(CoefficientIo, EmptyListRoundTrips) {
  const SpectralField zero(1, 0);
  std::stringstream buf;
  write_coefficients(buf, zero, CoefficientHeader{1, 0, 0, 0.0, 0.0});
  EXPECT_EQ(read_coefficients(buf).field(0), cplx(0.0));
}

TEST(CoefficientIo, CsvHasFullPrecision) {
  SpectralField f(1, 1);
  f(1) = cplx(0.1, -1.0 / 3.0);
  std::ostringstream os;
  write_coefficients_csv(os, f);
  EXPECT_NE(os.str().find("1,0.10000000000000001,-0.33333333333333331"), std::string::npos);
  EXPECT_EQ(os.str().substr(0, 8), "k,re,im\n");
}

TEST(TrajectoryIo, RoundTripAndTamperDetection) {
  SolverConfig c;
  c.lambda = -1.0;
  c.tau = 0.125;
  c.N = 8;
  c.snapshot_times = {0.5, 1.0};
  const Trajectory t = run(make_random_hs({0.8, 0.51, 16, 2}), c);
  const fs::path dir = scratch("traj");
  write_trajectory(dir, t, "test-run", R"({"note": 1})");
  ASSERT_TRUE(fs::exists(dir / "manifest.json"));

  const Trajectory back = read_trajectory(dir);
  EXPECT_EQ(config_fingerprint(back.config), config_fingerprint(c));
  ASSERT_EQ(back.snapshots.size(), 2u);
  EXPECT_EQ(l2_norm(difference(back.at(1.0).field, t.at(1.0).field)), 0.0);
  EXPECT_EQ(back.mass_trace.size(), t.mass_trace.size());

  std::ofstream(dir / "mass.csv", std::ios::app) << "9,9,9,9,9\n";
  EXPECT_THROW(read_trajectory(dir), FormatError);
  fs::remove_all(dir);
}

TEST(TrajectoryIo, MassCsvSchema) {
  Trajectory t;
  t.mass_trace = {{0, 0.0, 2.0}, {1, 0.5, 1.0}};
  std::ostringstream os;
  write_mass_csv(os, t);
  EXPECT_EQ(os.str(), "step,t,mass,mass_over_initial,mass_sq\n0,0,2,1,4\n1,0.5,1,0.5,1\n");
}
