#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "sparsestream/oracle.hpp"
#include "sparsestream/stream.hpp"

namespace sparsestream {

enum class ForestShape : std::uint8_t {
  UniformRandomTree,  // Prüfer-uniform labeled tree on n vertices
  PathBundle,         // r vertex-disjoint paths (r defaults to 1)
  SpiderP4,           // vertex with one leaf and r pendant P4s; n = 4r + 2
  StarWithLeaves,     // K_{1,r} with a leaf hung on every vertex; n = 2(r + 1)
  P3Spider,           // centre with r pendant P3s; n = 3r + 1
  RandomForest,       // r uniform random trees, random labels
  Caterpillar,        // spine of r vertices, one leaf each; n = 2r
};

const char* to_string(ForestShape shape);
/// Accepts the CLI spellings: random-tree, path, spider-p4, star-with-leaves,
/// p3-spider, random-forest, caterpillar.
ForestShape parse_shape(std::string_view name);

struct ForestSpec {
  ForestShape shape = ForestShape::UniformRandomTree;
  std::uint32_t n = 0;  // 0 lets r-determined shapes derive it
  std::uint32_t r = 0;  // 0 means "shape default" where one exists
  StreamOrder order = StreamOrder::Arbitrary;
  StreamModel model = StreamModel::EdgeArrival;
  double deletion_rate = 0.0;
  std::uint64_t seed = 0;
};

struct Generated {
  StreamSequence stream;
  GroundTruth truth;
};

/// Vertex count a ForestSpec resolves to. Throws InvalidShapeParams.
std::uint32_t resolve_n(const ForestSpec& spec);

/// Final edge set of the forest described by spec (no stream wrapping).
std::vector<Edge> forest_edges(const ForestSpec& spec);

/// Forest stream plus exact ground truth. Identical specs give identical output.
Generated generate_forest(const ForestSpec& spec);

struct StreamOptions {
  StreamOrder order = StreamOrder::Arbitrary;
  StreamModel model = StreamModel::EdgeArrival;
  /// Decoy insert/delete pairs per final edge; edge model only.
  double deletion_rate = 0.0;
  std::uint64_t seed = 0;
};

/// Wraps an arbitrary simple graph as a stream. Decoys are non-edges of the
/// final graph, each inserted before it is deleted.
StreamSequence stream_from_edges(std::uint32_t n, std::span<const Edge> edges, const StreamOptions& opt);

/// Uniform labeled tree via a random Prüfer sequence.
std::vector<Edge> random_tree_edges(std::uint32_t n, std::mt19937_64& rng);

/// Random simple graph with round(avg_degree * n / 2) edges and every degree
/// at most max_degree. Edges are rejection-sampled uniformly over pairs.
std::vector<Edge> random_sparse_graph(std::uint32_t n, double avg_degree, std::uint32_t max_degree,
                                      std::uint64_t seed);

}  // namespace sparsestream
