#include <gtest/gtest.h>

#include "spinmat/selftest.hpp"

using namespace spinmat;

TEST(SelfTest, DefaultConfigurationPasses) {
  const SelfTestReport report = run_selftest({});
  for (const CheckResult& c : report.checks) EXPECT_TRUE(c.passed) << c.name << " metric " << c.metric;
  EXPECT_TRUE(report.passed());
}

TEST(SelfTest, ImpossibleToleranceIsReportedNotThrown) {
  SelfTestConfig config;
  config.samples = 20;
  ASSERT_TRUE(config.tol.set("unitarity", 1e-17));
  const SelfTestReport report = run_selftest(config);
  EXPECT_FALSE(report.passed());
  bool unitarity_failed = false;
  for (const CheckResult& c : report.checks)
    if (c.name == "unitarity" && !c.passed) unitarity_failed = true;
  EXPECT_TRUE(unitarity_failed);
}

TEST(SelfTest, DeterministicForFixedSeed) {
  SelfTestConfig config;
  config.samples = 30;
  EXPECT_EQ(to_json(run_selftest(config)), to_json(run_selftest(config)));
  EXPECT_EQ(to_csv(run_selftest(config)), to_csv(run_selftest(config)));
}

TEST(SelfTest, SeedIsRecorded) {
  SelfTestConfig config;
  config.seed = 99;
  config.samples = 10;
  EXPECT_EQ(run_selftest(config).seed, 99u);
}

TEST(Tolerances, UnknownNameIsRejected) {
  Tolerances tol;
  EXPECT_FALSE(tol.set("nonsense", 1.0));
  EXPECT_TRUE(tol.set("verify", 1e-4));
  EXPECT_EQ(tol.verify, 1e-4);
}
