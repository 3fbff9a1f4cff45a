#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "sparsestream/error.hpp"
#include "sparsestream/sketch/count_min.hpp"
#include "sparsestream/sketch/l0.hpp"
#include "sparsestream/sketch/l1.hpp"
#include "sparsestream/sketch/sparse_recovery.hpp"

namespace sparsestream::sketch {
namespace {

using Vec = std::map<std::uint32_t, std::int64_t>;

Vec random_vector(std::uint32_t n, std::uint32_t support, std::mt19937_64& rng) {
  Vec x;
  std::uniform_int_distribution<std::uint32_t> id(1, n);
  std::uniform_int_distribution<int> val(-10, 10);
  while (x.size() < support) {
    const int v = val(rng);
    if (v != 0) x[id(rng)] = v;
  }
  return x;
}

template <class Sketch>
void feed(Sketch& s, const Vec& x) {
  for (const auto& [i, v] : x) s.update(i, v);
}

double l1_norm(const Vec& x) {
  double s = 0;
  for (const auto& [i, v] : x) s += std::abs(static_cast<double>(v));
  return s;
}

TEST(L0Sketch, ExactForTinySupports) {
  L0Sketch s(1000, 0.2, 0.1, 1);
  EXPECT_EQ(s.estimate(), 0.0);
  s.update(5, 3);
  s.update(17, -2);
  EXPECT_NEAR(s.estimate(), 2.0, 0.05);
  s.update(5, -3);
  EXPECT_NEAR(s.estimate(), 1.0, 0.05);
}

TEST(L0Sketch, AccurateOnRandomVectors) {
  const double eps = 0.2, delta = 0.1;
  std::mt19937_64 rng(7);
  int ok = 0;
  const int trials = 60;
  for (int t = 0; t < trials; ++t) {
    const auto x = random_vector(10000, 100 + static_cast<std::uint32_t>(rng() % 3000), rng);
    L0Sketch s(10000, eps, delta, rng());
    feed(s, x);
    ok += std::abs(s.estimate() - static_cast<double>(x.size())) <= eps * static_cast<double>(x.size());
  }
  const double sigma = std::sqrt(trials * delta * (1 - delta));
  EXPECT_GE(ok, (1 - delta) * trials - 3 * sigma);
}

TEST(L0Sketch, UniformOffsetMatchesExplicitUpdates) {
  L0Sketch a(300, 0.3, 0.2, 9), b(300, 0.3, 0.2, 9);
  a.update(4, 1);
  b.update(4, 1);
  a.apply_uniform_offset(-1);
  for (std::uint32_t i = 1; i <= 300; ++i) b.update(i, -1);
  EXPECT_EQ(a, b);
}

TEST(L0Sketch, LinearAndSerializable) {
  std::mt19937_64 rng(3);
  const auto x = random_vector(500, 50, rng), y = random_vector(500, 50, rng);
  L0Sketch sx(500, 0.3, 0.2, 4), sy(500, 0.3, 0.2, 4), sxy(500, 0.3, 0.2, 4);
  feed(sx, x);
  feed(sy, y);
  feed(sxy, x);
  feed(sxy, y);
  sx += sy;
  EXPECT_EQ(sx, sxy);
  EXPECT_EQ(L0Sketch::deserialize(sx.serialize()), sx);
  L0Sketch other(500, 0.3, 0.2, 5);
  EXPECT_THROW(sx += other, Error);
}

TEST(L1Sketch, AccurateOnRandomVectors) {
  const double eps = 0.2, delta = 0.1;
  std::mt19937_64 rng(8);
  int ok = 0;
  const int trials = 60;
  for (int t = 0; t < trials; ++t) {
    const auto x = random_vector(10000, 200 + static_cast<std::uint32_t>(rng() % 2000), rng);
    L1Sketch s(10000, eps, delta, rng());
    feed(s, x);
    ok += std::abs(s.estimate() - l1_norm(x)) <= eps * l1_norm(x);
  }
  const double sigma = std::sqrt(trials * delta * (1 - delta));
  EXPECT_GE(ok, (1 - delta) * trials - 3 * sigma);
}

TEST(L1Sketch, OffsetCacheAgreesWithUpdates) {
  L1Sketch a(200, 0.3, 0.2, 2), b(200, 0.3, 0.2, 2);
  a.update(7, 5);
  b.update(7, 5);
  a.apply_uniform_offset(-2);
  for (std::uint32_t i = 1; i <= 200; ++i) b.update(i, -2);
  EXPECT_EQ(a, b);
  EXPECT_GT(a.space_bytes(), b.space_bytes());  // the cache is counted
}

TEST(L1Sketch, MergeAndRoundTrip) {
  L1Sketch a(100, 0.3, 0.2, 6), b(100, 0.3, 0.2, 6), ab(100, 0.3, 0.2, 6);
  a.update(3, 4);
  b.update(3, -1);
  b.update(90, 2);
  ab.update(3, 3);
  ab.update(90, 2);
  a += b;
  EXPECT_EQ(a, ab);
  EXPECT_EQ(L1Sketch::deserialize(a.serialize()), a);
  EXPECT_EQ(a.rows() % 2, 1u);
}

TEST(SparseRecovery, RecoversTheContractExample) {
  SparseRecovery s(20, 2, 0.05, 1);
  s.update(5, 2);
  s.update(9, 1);
  const auto d = s.decode();
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(*d, (Vec{{5, 2}, {9, 1}}));
}

TEST(SparseRecovery, ZeroVectorDecodesEmpty) {
  SparseRecovery s(20, 3, 0.05, 1);
  s.update(4, 1);
  s.update(4, -1);
  ASSERT_TRUE(s.decode().has_value());
  EXPECT_TRUE(s.decode()->empty());
}

TEST(SparseRecovery, NeverReturnsAWrongVector) {
  std::mt19937_64 rng(12);
  int wrong = 0, failed = 0;
  for (int t = 0; t < 2000; ++t) {
    const std::uint32_t k = 1 + static_cast<std::uint32_t>(rng() % 30);
    const std::uint32_t support = static_cast<std::uint32_t>(rng() % (2 * k + 1));  // sometimes too dense
    const auto x = random_vector(5000, support, rng);
    SparseRecovery s(5000, k, 0.05, rng());
    feed(s, x);
    const auto d = s.decode();
    if (!d) {
      ++failed;
      continue;
    }
    if (*d != x) ++wrong;
  }
  EXPECT_EQ(wrong, 0);
  EXPECT_GT(failed, 0);
}

TEST(SparseRecovery, TooDenseFailsMostly) {
  int failed = 0;
  std::mt19937_64 rng(4);
  for (int t = 0; t < 500; ++t) {
    SparseRecovery s(100, 2, 0.05, rng());
    s.update(1, 1);
    s.update(2, 1);
    s.update(3, 1);
    failed += !s.decode().has_value();
  }
  EXPECT_GE(failed, 0.95 * 500 - 3 * std::sqrt(500 * 0.05 * 0.95));
}

TEST(SparseRecovery, OffsetAndSerialization) {
  SparseRecovery a(50, 4, 0.1, 3);
  for (std::uint32_t i = 1; i <= 50; ++i) a.update(i, 1);
  a.update(10, 2);
  a.apply_uniform_offset(-1);
  const auto d = SparseRecovery::deserialize(a.serialize()).decode();
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(*d, (Vec{{10, 2}}));
}

TEST(CountMin, SingleItemIsReported) {
  CountMinHH s(100, 0.1, 0.1, 0.05, 1);
  s.update(42, 10);
  const auto hh = s.heavy_hitters();
  ASSERT_EQ(hh.size(), 1u);
  EXPECT_EQ(hh[0].first, 42u);
  EXPECT_EQ(s.estimate(42), 10);
}

TEST(CountMin, UniformVectorHasNoHeavyHitters) {
  int clean = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    CountMinHH s(1000, 0.01, 0.01, 0.1, seed);
    for (std::uint32_t i = 1; i <= 1000; ++i) s.update(i, 1);
    clean += s.heavy_hitters().empty();
  }
  EXPECT_GE(clean, 34);
}

TEST(CountMin, StarCentreIsReported) {
  CountMinHH s(51, 0.25, 0.25, 0.05, 2);
  for (std::uint32_t leaf = 2; leaf <= 51; ++leaf) {
    s.update(1, 1);
    s.update(leaf, 1);
  }
  const auto hh = s.heavy_hitters();
  ASSERT_EQ(hh.size(), 1u);
  EXPECT_EQ(hh[0].first, 1u);
  EXPECT_EQ(s.total(), 100);
}

TEST(CountMin, NeverUnderestimatesNonnegativeVectors) {
  std::mt19937_64 rng(5);
  CountMinHH s(2000, 0.05, 0.05, 0.1, 9);
  std::vector<std::int64_t> x(2001, 0);
  for (int t = 0; t < 5000; ++t) {
    const auto i = static_cast<std::uint32_t>(1 + rng() % 2000);
    ++x[i];
    s.update(i, 1);
  }
  for (std::uint32_t i = 1; i <= 2000; ++i) ASSERT_GE(s.estimate(i), x[i]);
  EXPECT_EQ(CountMinHH::deserialize(s.serialize()), s);
}

TEST(Serialization, RejectsCorruptAndForeignBytes) {
  const L0Sketch l0(100, 0.3, 0.2, 1);
  const std::string bytes = l0.serialize();
  try {
    L1Sketch::deserialize(bytes);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IncompatibleSketch);
  }
  for (const std::string& bad : {bytes.substr(0, bytes.size() - 1), bytes + "x", "XXXX" + bytes.substr(4)}) {
    try {
      L0Sketch::deserialize(bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::CorruptSketch);
    }
  }
}

}  // namespace
}  // namespace sparsestream::sketch
