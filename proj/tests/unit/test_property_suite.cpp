#include <gtest/gtest.h>

#include <sstream>

#include <logsplit/property_suite.hpp>

using namespace logsplit;

TEST(PropertySuite, SmallSweepHolds) {
  const PropertySuiteReport r = property_suite(3, {2000, 40, 10});
  EXPECT_TRUE(r.passed()) << r.first_failure()->inequality;
  EXPECT_EQ(r.results.size(), 20u);
  for (const PropertyResult &p : r.results)
    EXPECT_GT(p.samples, 0) << p.inequality;
}

TEST(PropertySuite, InjectedFaultIsCaught) {
  const PropertySuiteReport r = property_suite(3, {2000, 0, 0}, true);
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.first_failure()->inequality, "f_eps_gap");
  EXPECT_FALSE(r.first_failure()->worst_input.empty());
}

TEST(PropertySuite, ZeroCountsPass) {
  const PropertySuiteReport r = property_suite(1, {0, 0, 0});
  EXPECT_TRUE(r.passed());
  for (const PropertyResult &p : r.results)
    EXPECT_EQ(p.samples, 0);
}

TEST(PropertySuite, SameSeedSameReport) {
  const PropertyCounts c{500, 5, 3};
  std::ostringstream a, b;
  write_props_csv(a, property_suite(77, c));
  write_props_csv(b, property_suite(77, c));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "inequality,samples,worst_margin");
}
