#include <gtest/gtest.h>

#include <random>

#include "sparsestream/generators.hpp"
#include "sparsestream/oracle.hpp"
#include "sparsestream/stream.hpp"

namespace sparsestream {
namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidArgument;
}

TEST(Stream, ParsesTurnstileEvents) {
  const auto s = parse_stream("# a comment\n# n=4 model=edge\n+ 1 2\n\n+ 2 3\n- 1 2\n+ 3 4\n");
  EXPECT_EQ(s.n(), 4u);
  EXPECT_EQ(s.model(), StreamModel::EdgeArrival);
  EXPECT_EQ(s.order(), StreamOrder::Unknown);
  EXPECT_EQ(s.size(), 4u);
  EXPECT_EQ(s.deletion_count(), 1u);
  EXPECT_FALSE(s.insertion_only());
  const std::vector<Edge> want{{2, 3}, {3, 4}};
  EXPECT_EQ(s.final_edges(), want);
  EXPECT_TRUE(s.has_isolated_vertices());  // vertex 1 lost its only edge
}

TEST(Stream, ParsesVertexArrivals) {
  const auto s = parse_stream("# n=3 model=vertex\nv 2 :\nv 1 : 2\nv 3 : 1,2\n");
  EXPECT_EQ(s.model(), StreamModel::VertexArrival);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_TRUE(s.updates()[0].neighbors.empty());
  EXPECT_EQ(s.final_edges().size(), 3u);
}

TEST(Stream, SerializeRoundTrips) {
  for (auto model : {StreamModel::EdgeArrival, StreamModel::VertexArrival}) {
    ForestSpec spec{ForestShape::UniformRandomTree, 40, 0, StreamOrder::Random, model,
                    model == StreamModel::EdgeArrival ? 1.0 : 0.0, 9};
    const auto g = generate_forest(spec);
    EXPECT_EQ(parse_stream(serialize_stream(g.stream)), g.stream);
  }
}

TEST(Stream, RejectsMalformedInput) {
  EXPECT_EQ(kind_of([] { parse_stream("+ 1 2\n"); }), ErrorKind::MalformedLine);
  EXPECT_EQ(kind_of([] { parse_stream("# n=3 model=edge\n+ 1 1\n"); }), ErrorKind::MalformedLine);
  EXPECT_EQ(kind_of([] { parse_stream("# n=3 model=edge\n+ 1 4\n"); }), ErrorKind::IdOutOfRange);
  EXPECT_EQ(kind_of([] { parse_stream("# n=3 model=edge\n+ 1 2\n+ 2 1\n"); }), ErrorKind::TurnstileViolation);
  EXPECT_EQ(kind_of([] { parse_stream("# n=3 model=edge\n- 1 2\n"); }), ErrorKind::TurnstileViolation);
  EXPECT_EQ(kind_of([] { parse_stream("# n=3 model=edge\n* 1 2\n"); }), ErrorKind::MalformedLine);
  EXPECT_EQ(kind_of([] { parse_stream("# n=3 model=vertex\nv 1 : 2\n"); }), ErrorKind::MalformedLine);
  EXPECT_EQ(kind_of([] { parse_stream("# n=3 model=vertex\nv 1 :\nv 1 :\n"); }), ErrorKind::MalformedLine);
  EXPECT_EQ(kind_of([] { parse_stream("# n=3 model=edge\nv 1 :\n"); }), ErrorKind::MalformedLine);
}

TEST(Stream, ParseErrorsCarryTheLine) {
  try {
    parse_stream("# n=3 model=edge\n+ 1 2\n+ 1 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.kind(), ErrorKind::TurnstileViolation);
  }
}

TEST(Stream, DeletionBudgetIsEnforced) {
  StreamBuilder b(2, StreamModel::EdgeArrival, 1.0);
  b.push(StreamUpdate::insert(1, 2));
  b.push(StreamUpdate::erase(1, 2));
  b.push(StreamUpdate::insert(1, 2));
  b.push(StreamUpdate::erase(1, 2));
  b.push(StreamUpdate::insert(1, 2));
  EXPECT_EQ(kind_of([&] { b.push(StreamUpdate::erase(1, 2)); }), ErrorKind::DeletionBudgetExceeded);
}

TEST(Stream, ExactCountersGiveComponentsOfForests) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ForestSpec spec{ForestShape::RandomForest, 60, 4, StreamOrder::Random, StreamModel::EdgeArrival, 2.0, seed};
    const auto g = generate_forest(spec);
    const EdgeCounters c = exact_counters(g.stream);
    EXPECT_EQ(c.m, g.truth.m);
    EXPECT_EQ(c.c, g.truth.components);
    EXPECT_EQ(c.c, 4);
  }
}

TEST(Stream, ReplayIsIdenticalAcrossPasses) {
  const auto g = generate_forest({ForestShape::UniformRandomTree, 30, 0, StreamOrder::Random,
                                  StreamModel::EdgeArrival, 1.0, 3});
  std::vector<std::vector<StreamUpdate>> seen(3);
  const std::size_t delivered = replay(g.stream, 3, [&](const StreamUpdate& u, int pass) {
    seen[static_cast<std::size_t>(pass)].push_back(u);
    return ReplayControl::proceed();
  });
  EXPECT_EQ(delivered, 3 * g.stream.size());
  EXPECT_EQ(seen[0], seen[1]);
  EXPECT_EQ(seen[1], seen[2]);
}

TEST(Stream, ReplayAbortReportsPosition) {
  const auto g = generate_forest({ForestShape::PathBundle, 10, 1, StreamOrder::Arbitrary,
                                  StreamModel::EdgeArrival, 0.0, 0});
  try {
    replay(g.stream, 2, [](const StreamUpdate&, int pass) {
      static int count = 0;
      return pass == 1 && ++count == 3 ? ReplayControl::stop("enough") : ReplayControl::proceed();
    });
    FAIL();
  } catch (const ReplayAborted& e) {
    EXPECT_EQ(e.pass(), 1);
    EXPECT_EQ(e.delivered(), g.stream.size() + 3);
    EXPECT_EQ(e.reason(), "enough");
  }
}

TEST(Stream, GroundTruthJsonHasExactLambda) {
  const auto g = generate_forest({ForestShape::PathBundle, 3, 1, StreamOrder::Arbitrary,
                                  StreamModel::EdgeArrival, 0.0, 0});
  const std::string j = to_json(g.truth);
  EXPECT_NE(j.find("\"lambda\":\"4/3\""), std::string::npos) << j;
  EXPECT_NE(j.find("\"beta\":2"), std::string::npos) << j;
}

}  // namespace
}  // namespace sparsestream
