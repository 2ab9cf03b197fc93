#include <gtest/gtest.h>

#include "harmap/harmap.hpp"

using namespace harmap;

TEST(Paths, ConstantPathVerifies) {
  const auto p = sample_stratum(3, 1, 4);
  const auto path = connect(p, p, 10);
  EXPECT_EQ(path.steps.size(), 11u);
  for (const auto& s : path.steps) EXPECT_EQ(s.repairs, 0u);
  const auto rep = verify_path(path, 5);
  EXPECT_TRUE(rep.ok());
  EXPECT_LE(rep.max_step, kStepSlack);
}

TEST(Paths, DifferentStrataRejected) {
  EXPECT_THROW(connect(sample_stratum(3, 0, 1), sample_stratum(3, 1, 1), 10), PreconditionError);
  EXPECT_THROW(connect(sample_stratum(3, 1, 1), sample_stratum(3, 1, 2), 0), PreconditionError);
}

TEST(Paths, SeededPairInHol31) {
  const auto path = connect(sample_stratum(3, 1, 1000), sample_stratum(3, 1, 1001), 50);
  EXPECT_GE(path.steps.size(), 51u);
  const auto rep = verify_path(path, 10);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.expected_degree, 0);
  EXPECT_EQ(rep.expected_energy, 6);
  std::size_t integrated = 0;
  for (const auto& v : rep.steps) {
    EXPECT_TRUE(v.membership.index_ok);
    if (!v.invariants) continue;
    ++integrated;
    EXPECT_NEAR(v.invariants->degree, 0.0, 1e-2);
    EXPECT_NEAR(v.invariants->energy, 6.0, 1e-2);
  }
  EXPECT_GE(integrated, 6u);
  EXPECT_LE(rep.max_step, 2 * rep.nominal_step);
}

TEST(Paths, NumericMembershipDistinguishesIndex) {
  const auto p = sample_stratum(4, 2, 8);
  const CPolyTriple c{p.f[0].to_complex(), p.f[1].to_complex(), p.f[2].to_complex()};
  EXPECT_TRUE(numeric_membership(c, 4, 2).ok());
  EXPECT_FALSE(numeric_membership(c, 4, 1).ok());
  EXPECT_FALSE(numeric_membership(c, 4, 3).ok());
}

TEST(Paths, CorruptedStepIsFlagged) {
  auto path = connect(sample_stratum(3, 1, 1002), sample_stratum(3, 1, 1003), 20);
  ASSERT_TRUE(verify_path(path, 0).ok());
  auto& victim = path.steps[7];
  std::vector<Complex> c(victim.p[1].coeffs().begin(), victim.p[1].coeffs().end());
  c[0] += 1.0;
  victim.p[1] = CPoly(std::move(c));
  const auto rep = verify_path(path, 0);
  EXPECT_FALSE(rep.ok());
  ASSERT_FALSE(rep.failed_steps.empty());
  EXPECT_NE(std::find(rep.failed_steps.begin(), rep.failed_steps.end(), 7u), rep.failed_steps.end());
  EXPECT_FALSE(rep.steps[7].membership.index_ok);
}

TEST(Paths, DeterministicForFixedSeed) {
  PathConfig cfg;
  cfg.seed = 42;
  const auto a = connect(sample_stratum(3, 1, 1010), sample_stratum(3, 1, 1011), 30, cfg);
  const auto b = connect(sample_stratum(3, 1, 1010), sample_stratum(3, 1, 1011), 30, cfg);
  ASSERT_EQ(a.steps.size(), b.steps.size());
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    EXPECT_EQ(a.steps[i].p, b.steps[i].p);
    EXPECT_EQ(a.steps[i].a, b.steps[i].a);
  }
}
