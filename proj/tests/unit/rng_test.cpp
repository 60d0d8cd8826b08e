#include "hgoe/rng.hpp"

#include <gtest/gtest.h>

#include <vector>

namespace hgoe {
namespace {

TEST(Rng, KnownSplitMixAndFnvValues) {
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(derive_seed(5, "x"), splitmix64(5 ^ fnv1a64("x")));
}

TEST(Rng, MatchesReferenceXoshiroStream) {
  Rng rng(42);
  EXPECT_EQ(rng(), 0x15780b2e0c2ec716ULL);
  EXPECT_EQ(rng(), 0x6104d9866d113a7eULL);
  EXPECT_EQ(rng(), 0xae17533239e499a1ULL);
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    differs |= x != c();
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, BoundedOutputIsInRangeAndRoughlyUniform) {
  Rng rng(9);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto v = rng.below(7);
    ASSERT_LT(v, 7u);
    ++counts[v];
  }
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
  EXPECT_EQ(rng.below(1), 0u);
}

TEST(Rng, UniformInUnitInterval) {
  Rng rng(1);
  double sum = 0;
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 10000, 0.5, 0.02);
}

}  // namespace
}  // namespace hgoe
