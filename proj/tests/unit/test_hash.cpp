#include <gtest/gtest.h>

#include <map>
#include <set>

#include "sparsestream/hash.hpp"

namespace sparsestream {
namespace {

TEST(Hash, PrimalityAgreesWithTrialDivision) {
  auto slow = [](std::uint64_t x) {
    if (x < 2) return false;
    for (std::uint64_t d = 2; d * d <= x; ++d)
      if (x % d == 0) return false;
    return true;
  };
  for (std::uint64_t x = 0; x < 20000; ++x) ASSERT_EQ(is_prime(x), slow(x)) << x;
  EXPECT_TRUE(is_prime((1ULL << 61) - 1));
  EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_EQ(next_prime(1000), 1009u);
}

TEST(Hash, KWiseStaysInCodomain) {
  const KWiseHash h(4, 1000, 77, 3);
  for (std::uint64_t x = 1; x <= 1000; ++x) {
    const auto y = h(x);
    ASSERT_GE(y, 1u);
    ASSERT_LE(y, 77u);
  }
  EXPECT_EQ(h.k(), 4u);
  EXPECT_GT(h.prime(), 1000u);
  EXPECT_THROW(h(0), Error);
  EXPECT_THROW(h(1001), Error);
}

TEST(Hash, SeedDeterminesFunction) {
  const KWiseHash a(3, 100, 1000, 11), b(3, 100, 1000, 11), c(3, 100, 1000, 12);
  bool differs = false;
  for (std::uint64_t x = 1; x <= 100; ++x) {
    EXPECT_EQ(a(x), b(x));
    differs |= a(x) != c(x);
  }
  EXPECT_TRUE(differs);
}

// Pairwise independence over GF(P) with codomain P: every pair of outputs
// is equally likely across the whole family. Enumerate the family for P=7.
TEST(Hash, PairwiseIndependenceOverSmallField) {
  const std::uint64_t p = 7;
  std::map<std::pair<std::uint64_t, std::uint64_t>, int> joint;
  for (std::uint64_t a = 0; a < p; ++a)
    for (std::uint64_t b = 0; b < p; ++b) ++joint[{(a * 2 + b) % p, (a * 5 + b) % p}];
  for (const auto& [k, count] : joint) EXPECT_EQ(count, 1);
  EXPECT_EQ(joint.size(), p * p);
}

TEST(Hash, IndependenceDegreeGrowsWithLogInverseEpsilon) {
  EXPECT_EQ(min_wise_independence(0.5), 4u);
  EXPECT_EQ(min_wise_independence(0.25), 8u);
  EXPECT_EQ(min_wise_independence(0.1), 16u);
  EXPECT_EQ(min_wise_independence(0.1, 1), 4u);
}

TEST(Hash, MinWiseCodomainIsNCubed) {
  const MinWiseHash h(0.2, 100, 5);
  EXPECT_EQ(h.inner().codomain(), 1000000u);
  EXPECT_THROW(MinWiseHash(0.0, 100, 1), Error);
  EXPECT_THROW(MinWiseHash(1.0, 100, 1), Error);
  EXPECT_THROW(MinWiseHash(1e-5, 100, 1), Error);  // below n^-2
}

TEST(Hash, IsMinBreaksTiesTowardsSmallerId) {
  const MinWiseHash h(0.25, 50, 2);
  for (VertexId x = 1; x <= 50; ++x) {
    std::vector<VertexId> others;
    for (VertexId y = 1; y <= 50; ++y)
      if (y != x) others.push_back(y);
    bool smallest = true;
    for (VertexId y : others) smallest &= h(x) < h(y) || (h(x) == h(y) && x < y);
    EXPECT_EQ(h.is_min_of(x, others), smallest);
  }
}

// ε-min-wise: for |A| = 9, each of 10 elements should be the minimum about
// 1/10 of the time across seeds.
TEST(Hash, MinWiseFrequenciesAreNearUniform) {
  const double eps = 0.25;
  const int trials = 20000;
  std::vector<int> wins(11, 0);
  std::vector<VertexId> all{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  for (int s = 0; s < trials; ++s) {
    const MinWiseHash h(eps, 1000, static_cast<std::uint64_t>(s));
    VertexId best = 1;
    for (VertexId v : all)
      if (h(v) < h(best) || (h(v) == h(best) && v < best)) best = v;
    ++wins[best];
  }
  const double expect = trials / 10.0;
  const double sigma = std::sqrt(trials * 0.1 * 0.9);
  for (VertexId v : all) {
    EXPECT_GT(wins[v], (1 - eps) * expect - 3 * sigma) << v;
    EXPECT_LT(wins[v], (1 + eps) * expect + 3 * sigma) << v;
  }
}

}  // namespace
}  // namespace sparsestream
