#include <set>

#include <gtest/gtest.h>

#include "seaoco/random.hpp"

using namespace seaoco;

TEST(Stream, Deterministic) {
  Stream a(42, 3, Role::Env);
  Stream b(42, 3, Role::Env);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
  EXPECT_EQ(a.draws(), 100u);
}

TEST(Stream, RolesAndEpisodesDiffer) {
  Stream a(42, 3, Role::Env);
  Stream b(42, 3, Role::ExtraSample);
  Stream c(42, 4, Role::Env);
  Stream d(43, 3, Role::Env);
  const auto x = a();
  EXPECT_NE(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(x, d());
}

TEST(Stream, UniformRangeAndMean) {
  Stream s(1, 0, Role::Coins);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
}

TEST(Stream, BelowCoversRange) {
  Stream s(9, 0, Role::Pool);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto k = s.below(7);
    ASSERT_LT(k, 7u);
    seen.insert(k);
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(Stream, RademacherBalanced) {
  Stream s(2, 0, Role::Coins);
  double sum = 0.0;
  for (int i = 0; i < 40000; ++i) {
    const double r = s.rademacher();
    ASSERT_TRUE(r == 1.0 || r == -1.0);
    sum += r;
  }
  EXPECT_LT(std::abs(sum), 4.0 * 200.0);
}

TEST(Splitmix, KnownValue) {
  // First output of the reference splitmix64 generator seeded with 0.
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
}
