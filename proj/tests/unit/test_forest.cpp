#include <gtest/gtest.h>

#include <random>

#include "sparsestream/forest.hpp"
#include "sparsestream/generators.hpp"
#include "sparsestream/oracle.hpp"

namespace sparsestream {
namespace {

StreamSequence forest(ForestShape shape, std::uint32_t n, std::uint32_t r, std::uint64_t seed = 1,
                      double deletion_rate = 0.0) {
  return generate_forest({shape, n, r, StreamOrder::Random, StreamModel::EdgeArrival, deletion_rate, seed}).stream;
}

StreamSequence edges_stream(std::uint32_t n, std::vector<Edge> e) {
  return stream_from_edges(n, e, {StreamOrder::Arbitrary, StreamModel::EdgeArrival, 0.0, 0});
}

ForestConfig config(double eps = 0.2, double delta = 0.1, std::uint64_t seed = 0) {
  ForestConfig c;
  c.epsilon = eps;
  c.delta = delta;
  c.seed = seed;
  return c;
}

TEST(Forest, NonLeafCountExamples) {
  EXPECT_EQ(estimate_deg_ge2(forest(ForestShape::PathBundle, 2, 1), 0.2, 0.1, 1), 0.0);
  EXPECT_NEAR(estimate_deg_ge2(forest(ForestShape::PathBundle, 4, 1), 0.2, 0.1, 1), 2.0, 0.1);
  EXPECT_NEAR(estimate_deg_ge2(forest(ForestShape::SpiderP4, 0, 2), 0.2, 0.1, 1), 7.0, 0.2);
  // Decoy insert/delete pairs cancel.
  EXPECT_NEAR(estimate_deg_ge2(forest(ForestShape::PathBundle, 40, 1, 1, 1.0), 0.2, 0.1, 1), 38.0, 0.2 * 38);
}

TEST(Forest, LeafCountExamples) {
  const auto k13 = edges_stream(4, {{1, 2}, {1, 3}, {1, 4}});
  EXPECT_NEAR(estimate_deg1(k13, 0.2, 0.1, 3), 3.0, 0.2 * 3);
  EXPECT_NEAR(estimate_deg1(forest(ForestShape::PathBundle, 2, 1), 0.2, 0.1, 3), 2.0, 0.2 * 2);
  EXPECT_NEAR(estimate_deg1(forest(ForestShape::P3Spider, 0, 2), 0.2, 0.1, 3), 2.0, 0.2 * 2);
  EXPECT_NEAR(estimate_deg1(forest(ForestShape::PathBundle, 40, 4, 1, 1.0), 0.2, 0.1, 3), 8.0, 0.2 * 8);
}

TEST(Forest, RejectsIsolatedVertices) {
  const auto s = edges_stream(4, {{1, 2}, {2, 3}});
  try {
    estimate_beta_onepass(s, config());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IsolatedVertices);
  }
}

TEST(Forest, SupportSampleOfEverythingIsExact) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = generate_forest({ForestShape::RandomForest, 300, 4, StreamOrder::Random,
                                    StreamModel::EdgeArrival, 1.0, seed});
    SuppLargeConfig cfg{1.0, 1.0, 0.01, seed, std::nullopt};
    ASSERT_EQ(supp_sample_size(300, cfg), 300u);
    const SuppLargeResult r = estimate_supp_large(g.stream, cfg);
    ASSERT_FALSE(r.aborted);
    EXPECT_EQ(r.estimate, static_cast<double>(g.truth.supp));
  }
  SuppLargeConfig cfg{1.0, 1.0, 0.01, 0, std::nullopt};
  EXPECT_EQ(estimate_supp_large(forest(ForestShape::P3Spider, 0, 3), cfg).estimate, 3.0);
}

TEST(Forest, SupportSamplerAbortsOnNeighbourGrowth) {
  std::vector<Edge> star;
  for (VertexId leaf = 2; leaf <= 200; ++leaf) star.emplace_back(1, leaf);
  SuppLargeConfig cfg{1000.0, 1.0, 0.5, 0, std::vector<VertexId>{1}};
  const SuppLargeResult r = estimate_supp_large(edges_stream(200, star), cfg);
  EXPECT_TRUE(r.aborted);
  // The threshold follows the running m, so the lone entry of a leaf is
  // only safe once most of the star has arrived.
  cfg.sample = std::vector<VertexId>{200};
  EXPECT_FALSE(estimate_supp_large(edges_stream(200, star), cfg).aborted);
}

TEST(Forest, SmallCoreExamples) {
  const auto p2s = forest(ForestShape::PathBundle, 6, 3);
  const SmallCoreResult a = recover_small_core(p2s, 5, 10, 1);
  ASSERT_TRUE(a.core.has_value()) << a.failure;
  EXPECT_EQ(*a.core, (std::pair<std::int64_t, std::int64_t>{6, 0}));
  const SmallCoreResult b = recover_small_core(forest(ForestShape::PathBundle, 4, 1), 5, 10, 1);
  ASSERT_TRUE(b.core.has_value()) << b.failure;
  EXPECT_EQ(*b.core, (std::pair<std::int64_t, std::int64_t>{2, 2}));
}

TEST(Forest, SmallCoreIsExactOrFails) {
  int failures = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const auto g = generate_forest({ForestShape::RandomForest, 400, 20, StreamOrder::Random,
                                    StreamModel::EdgeArrival, 1.0, static_cast<std::uint64_t>(t)});
    const SmallCoreResult r = recover_small_core(g.stream, static_cast<double>(g.truth.deg_ge2), 10, t);
    if (!r.core) {
      ++failures;
      continue;
    }
    EXPECT_EQ(r.core->first, g.truth.supp);
    EXPECT_EQ(r.core->second, g.truth.deg_ge2);
  }
  EXPECT_LE(failures, trials / 10 + 3 * std::sqrt(trials * 0.1 * 0.9));
}

TEST(Forest, SmallCoreFailsWhenTheCoreIsTooLarge) {
  int failures = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = generate_forest({ForestShape::UniformRandomTree, 300, 0, StreamOrder::Random,
                                    StreamModel::EdgeArrival, 0.0, seed});
    const double k2 = static_cast<double>(g.truth.deg_ge2) - 5;
    failures += !recover_small_core(g.stream, k2, 10, seed).core.has_value();
  }
  EXPECT_GE(failures, 54);
}

TEST(Forest, OnePassExamples) {
  const auto path = forest(ForestShape::PathBundle, 20, 1);
  const auto beta = estimate_beta_onepass(path, config()).report;
  EXPECT_EQ(beta.point, 10.0);
  EXPECT_EQ(beta.factor, 1.5);
  // P2: exact counts give lower = max{1, 2 - 1} = 1; the sketch only gets within ε.
  EXPECT_EQ(beta_onepass_bounds(2, 2, 1).lower, 1.0);
  EXPECT_NEAR(estimate_beta_onepass(forest(ForestShape::PathBundle, 2, 1), config()).report.point, 1.0, 0.2);

  const auto p2s = forest(ForestShape::PathBundle, 10, 5);
  const auto gamma = estimate_gamma_onepass(p2s, config()).report;
  EXPECT_EQ(gamma.lower, 5.0);
  EXPECT_EQ(gamma.upper, 5.0);
  EXPECT_EQ(gamma.point, 5.0);
  EXPECT_TRUE(gamma.has_flag("p2_heavy"));
  EXPECT_EQ(estimate_phi_onepass(p2s, config()).report.point, 5.0);

  const auto spider = estimate_gamma_onepass(forest(ForestShape::SpiderP4, 0, 2), config(0.1)).report;
  EXPECT_LE(spider.lower, 3.0);
  EXPECT_GE(spider.upper, 3.0);
}

TEST(Forest, TwoPassExactBranchExamples) {
  // P3 spider: point -> 3r/2 + 3/8 while β = 2r.
  for (std::uint32_t r = 2; r <= 6; ++r) {
    const auto s = forest(ForestShape::P3Spider, 0, r);
    const auto rep = estimate_beta_twopass(s, config()).report;
    ASSERT_TRUE(rep.has_flag("exact_counts"));
    const double n = 3 * r + 1;
    EXPECT_DOUBLE_EQ(rep.point, std::min(3 * (n + r) / 8, (n + r - r) / 2));
    EXPECT_EQ(estimate_phi_twopass(s, config()).report.point, 3.0 * (r + 1) / 2);
  }
  const auto path = estimate_beta_twopass(forest(ForestShape::PathBundle, 16, 1), config()).report;
  // min(3(16 + 2)/8, (16 + 2 - 2)/2) while β = 8.
  EXPECT_EQ(path.point, 6.75);
  for (std::uint32_t r = 2; r <= 6; ++r) {
    EXPECT_EQ(estimate_gamma_twopass(forest(ForestShape::Caterpillar, 0, r), config()).report.point, r);
    EXPECT_EQ(estimate_phi_twopass(forest(ForestShape::StarWithLeaves, 0, r), config()).report.point, r + 1.0);
    // (Deg≥2 + Supp)/2 = 2r + 1 dominates 2(3r+1)/3.
    EXPECT_DOUBLE_EQ(estimate_gamma_twopass(forest(ForestShape::SpiderP4, 0, r), config()).report.point,
                     2.0 * r + 1.0);
  }
}

TEST(Forest, VertexArrivalStreamsAreAccepted) {
  const auto g = generate_forest({ForestShape::UniformRandomTree, 120, 0, StreamOrder::Random,
                                  StreamModel::VertexArrival, 0.0, 3});
  const auto rep = estimate_phi_twopass(g.stream, config()).report;
  ASSERT_TRUE(rep.has_flag("exact_counts"));
  EXPECT_LE(static_cast<double>(*g.truth.phi), rep.point);
  EXPECT_LE(rep.point, 1.5 * static_cast<double>(*g.truth.phi));
}

TEST(Forest, DegradedWhenBothSupportBranchesFail) {
  ForestConfig cfg = config();
  cfg.support_sample = std::vector<VertexId>{1};
  cfg.c1 = 0.01;
  cfg.k2 = 1;
  const auto g = generate_forest({ForestShape::StarWithLeaves, 0, 20, StreamOrder::Arbitrary,
                                  StreamModel::EdgeArrival, 0.0, 0});
  const auto est = estimate_beta_twopass(g.stream, cfg);
  EXPECT_TRUE(est.report.degraded());
  EXPECT_TRUE(est.counts.support_aborted);
  EXPECT_FALSE(est.counts.exact_small.has_value());
  EXPECT_EQ(est.report.factor, 1.5);
  EXPECT_LE(est.report.lower, est.report.point);
}

TEST(Forest, ReportsKeepPointInsideInterval) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    const auto s = forest(ForestShape::UniformRandomTree, 500, 0, rng());
    const ForestConfig cfg = config(0.3, 0.2, rng());
    for (const auto& rep : {estimate_beta_onepass(s, cfg).report, estimate_gamma_onepass(s, cfg).report,
                            estimate_phi_onepass(s, cfg).report, estimate_beta_twopass(s, cfg).report,
                            estimate_gamma_twopass(s, cfg).report, estimate_phi_twopass(s, cfg).report}) {
      EXPECT_LE(rep.lower, rep.point);
      EXPECT_LE(rep.point, rep.upper);
      EXPECT_GE(rep.lower, 0.0);
    }
  }
}

TEST(Forest, ExactCountFormulasMeetTheirFactors) {
  for (std::uint32_t n = 2; n <= 7; ++n) {
    for_each_tree(n, [&](const Graph& g) {
      const GroundTruth t = exact_params(g);
      const double nn = n, d1 = t.deg1, h = t.deg_ge2, s = t.supp, c = t.components;
      const double bp = beta_twopass_point(nn, d1, s);
      EXPECT_LE(bp, *t.beta + 1e-9);
      EXPECT_LE(*t.beta, 4.0 / 3.0 * bp + 1e-9);
      const double gp = gamma_twopass_point(h, s);
      EXPECT_LE(*t.gamma, gp + 1e-9);
      EXPECT_LE(gp, 2.0 * *t.gamma + 1e-9);
      const double pp = phi_twopass_point(h, c, s);
      EXPECT_LE(*t.phi, pp + 1e-9);
      EXPECT_LE(pp, 1.5 * *t.phi + 1e-9);
    });
  }
}

TEST(Forest, TwoPassParameterDefaults) {
  const TwoPassParams b = two_pass_params(Parameter::Beta, 10000, config(0.2, 0.1));
  EXPECT_DOUBLE_EQ(b.k1, 100.0);
  EXPECT_DOUBLE_EQ(b.k2, 800.0);
  EXPECT_DOUBLE_EQ(b.c1, 3 * std::log(60.0));
  EXPECT_DOUBLE_EQ(b.c2, 10.0);
  EXPECT_DOUBLE_EQ(b.epsilon1, 0.1);
  EXPECT_DOUBLE_EQ(b.count_delta, 0.05);
  EXPECT_DOUBLE_EQ(two_pass_params(Parameter::Gamma, 10000, config()).k2, 1200.0);
}

}  // namespace
}  // namespace sparsestream
