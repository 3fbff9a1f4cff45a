#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sparsestream/stream.hpp"

namespace sparsestream {

/// Simple undirected graph on vertices 1..n. Used as the substrate for every
/// exact computation; no sublinear-space claims.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::uint32_t n) : adj_(std::size_t{n} + 1) {}

  /// Rejects self-loops, duplicates and out-of-range ids.
  static Graph from_edges(std::uint32_t n, std::span<const Edge> edges);
  static Graph from_stream(const StreamSequence& stream);

  void add_edge(VertexId u, VertexId v);

  std::uint32_t n() const noexcept { return static_cast<std::uint32_t>(adj_.size() - 1); }
  std::int64_t m() const noexcept { return m_; }
  std::uint32_t degree(VertexId v) const { return static_cast<std::uint32_t>(adj_[v].size()); }
  const std::vector<VertexId>& neighbors(VertexId v) const { return adj_[v]; }
  bool adjacent(VertexId u, VertexId v) const;
  std::vector<Edge> edges() const;

 private:
  std::vector<std::vector<VertexId>> adj_{1};
  std::int64_t m_ = 0;
};

/// Sum over v of 1/(deg(v)+1), exactly.
Rational exact_lambda(const Graph& g);

/// Component labels in [0, components); returns the component count.
std::int64_t label_components(const Graph& g, std::vector<std::uint32_t>& label);
bool is_forest(const Graph& g);

/// Degree, leaf, support and component statistics for any graph; the β, γ, φ
/// fields are filled only when g is a forest.
GroundTruth ground_truth(const Graph& g);

/// Like ground_truth but requires a forest. Throws NotAForest.
GroundTruth exact_params(const Graph& g);

/// Tree DPs on a forest. Isolated vertices count as single-vertex trees
/// (independent, must dominate themselves, unmatched).
std::int64_t forest_independence(const Graph& g);
std::int64_t forest_domination(const Graph& g);
std::int64_t forest_matching(const Graph& g);

/// Exhaustive search over vertex subsets. Any graph, n <= 20.
std::int64_t brute_independence(const Graph& g);
std::int64_t brute_domination(const Graph& g);
/// Exhaustive branching over edges. Any graph, n <= 20.
std::int64_t brute_matching(const Graph& g);

/// Maximum independent set forced to contain every leaf and no support vertex.
std::int64_t independence_all_leaves_no_support(const Graph& forest);
/// Minimum dominating set forced to contain every support vertex and no leaf.
std::int64_t domination_all_support_no_leaf(const Graph& forest);
/// Maximum matching in which every support vertex is matched to one of its leaves.
std::int64_t matching_support_to_leaf(const Graph& forest);

/// {v : position[v] < position[u] for every neighbour u}. position is
/// indexed by vertex id (index 0 unused) and must be injective on [1, n].
std::vector<VertexId> greedy_permutation_is(const Graph& g, std::span<const std::uint32_t> position);

struct CondProb {
  Rational joint;  // Pr[x < N(x) and y < N(y)]
  Rational cond;   // Pr[y < N(y) | x < N(x)]
};

/// Exact by enumeration of all n! orders. x, y non-adjacent, n <= 10.
CondProb min_first_cond_prob(const Graph& g, VertexId x, VertexId y);

/// (l + r + 2k + 2) / ((r + k + 1)(l + k + r + 2)).
Rational min_first_cond_closed_form(std::int64_t l, std::int64_t k, std::int64_t r);

/// Tree whose Prüfer sequence is `seq` (values in [1, n], length n - 2).
Graph prufer_decode(std::uint32_t n, std::span<const VertexId> seq);
std::vector<Edge> prufer_decode_edges(std::uint32_t n, std::span<const VertexId> seq);

/// n^(n-2).
std::uint64_t labeled_tree_count(std::uint32_t n);

/// Calls fn once per labeled tree on n vertices, 2 <= n <= 9. Throws TooLarge.
void for_each_tree(std::uint32_t n, const std::function<void(const Graph&)>& fn);

}  // namespace sparsestream
