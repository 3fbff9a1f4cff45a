#include "sparsestream/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

namespace sparsestream {

// ---------------------------------------------------------------------------
// Graph
// ---------------------------------------------------------------------------

Graph Graph::from_edges(std::uint32_t n, std::span<const Edge> edges) {
  Graph g(n);
  for (const Edge& e : edges) g.add_edge(e.u, e.v);
  return g;
}

Graph Graph::from_stream(const StreamSequence& stream) {
  return from_edges(stream.n(), stream.final_edges());
}

void Graph::add_edge(VertexId u, VertexId v) {
  if (u < 1 || v < 1 || u > n() || v > n())
    throw Error(ErrorKind::IdOutOfRange, "edge endpoint outside [1, n]");
  if (u == v) throw Error(ErrorKind::InvalidArgument, "self-loop");
  if (adjacent(u, v)) throw Error(ErrorKind::InvalidArgument, "duplicate edge");
  adj_[u].push_back(v);
  adj_[v].push_back(u);
  ++m_;
}

bool Graph::adjacent(VertexId u, VertexId v) const {
  const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  const VertexId other = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::find(a.begin(), a.end(), other) != a.end();
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(m_));
  for (VertexId u = 1; u <= n(); ++u)
    for (VertexId v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  std::sort(out.begin(), out.end());
  return out;
}

Rational exact_lambda(const Graph& g) {
  // Group by degree so the rational sum has at most Δ+1 terms.
  std::vector<std::int64_t> count_by_degree;
  for (VertexId v = 1; v <= g.n(); ++v) {
    const std::uint32_t d = g.degree(v);
    if (d >= count_by_degree.size()) count_by_degree.resize(d + 1, 0);
    ++count_by_degree[d];
  }
  Rational sum = 0;
  for (std::size_t d = 0; d < count_by_degree.size(); ++d)
    if (count_by_degree[d] != 0) sum += Rational(count_by_degree[d], static_cast<std::int64_t>(d + 1));
  return sum;
}

std::int64_t label_components(const Graph& g, std::vector<std::uint32_t>& label) {
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  label.assign(std::size_t{g.n()} + 1, kUnset);
  std::uint32_t next = 0;
  std::vector<VertexId> stack;
  for (VertexId s = 1; s <= g.n(); ++s) {
    if (label[s] != kUnset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (VertexId w : g.neighbors(v)) {
        if (label[w] == kUnset) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return next;
}

bool is_forest(const Graph& g) {
  std::vector<std::uint32_t> label;
  return g.m() == static_cast<std::int64_t>(g.n()) - label_components(g, label);
}

// ---------------------------------------------------------------------------
// Rooted traversal shared by the tree DPs
// ---------------------------------------------------------------------------

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
constexpr std::int64_t kNegInf = -kInf;

struct Rooted {
  std::vector<VertexId> order;   // BFS order over all components
  std::vector<VertexId> parent;  // 0 for roots
};

Rooted root_forest(const Graph& g) {
  if (!is_forest(g)) throw Error(ErrorKind::NotAForest, "graph contains a cycle");
  Rooted r;
  r.parent.assign(std::size_t{g.n()} + 1, 0);
  std::vector<bool> seen(std::size_t{g.n()} + 1, false);
  r.order.reserve(g.n());
  for (VertexId s = 1; s <= g.n(); ++s) {
    if (seen[s]) continue;
    seen[s] = true;
    std::size_t head = r.order.size();
    r.order.push_back(s);
    while (head < r.order.size()) {
      const VertexId v = r.order[head++];
      for (VertexId w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = true;
          r.parent[w] = v;
          r.order.push_back(w);
        }
      }
    }
  }
  return r;
}

std::vector<bool> leaf_mask(const Graph& g) {
  std::vector<bool> leaf(std::size_t{g.n()} + 1, false);
  for (VertexId v = 1; v <= g.n(); ++v) leaf[v] = g.degree(v) == 1;
  return leaf;
}

std::vector<bool> support_mask(const Graph& g, const std::vector<bool>& leaf) {
  std::vector<bool> supp(std::size_t{g.n()} + 1, false);
  for (VertexId v = 1; v <= g.n(); ++v)
    for (VertexId w : g.neighbors(v))
      if (leaf[w]) supp[v] = true;
  return supp;
}

void require_components_of_three(const Graph& g) {
  std::vector<std::uint32_t> label;
  const auto c = label_components(g, label);
  std::vector<std::uint32_t> size(static_cast<std::size_t>(c), 0);
  for (VertexId v = 1; v <= g.n(); ++v) ++size[label[v]];
  for (auto s : size)
    if (s < 3) throw Error(ErrorKind::InvalidArgument, "forced-structure DP needs components of order >= 3");
}

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  if (a >= kInf || b >= kInf) return kInf;
  if (a <= kNegInf || b <= kNegInf) return kNegInf;
  return a + b;
}

// Independent set DP; `allow_in` / `allow_out` restrict the state per vertex.
std::int64_t independence_dp(const Graph& g, const std::vector<bool>& allow_in,
                             const std::vector<bool>& allow_out) {
  const Rooted r = root_forest(g);
  std::vector<std::int64_t> in(std::size_t{g.n()} + 1, 0), out(std::size_t{g.n()} + 1, 0);
  for (VertexId v = 1; v <= g.n(); ++v) in[v] = 1;
  for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
    const VertexId v = *it;
    if (!allow_in[v]) in[v] = kNegInf;
    if (!allow_out[v]) out[v] = kNegInf;
    if (const VertexId p = r.parent[v]; p != 0) {
      in[p] = sat_add(in[p], out[v]);
      out[p] = sat_add(out[p], std::max(in[v], out[v]));
    }
  }
  std::int64_t total = 0;
  for (VertexId v : r.order)
    if (r.parent[v] == 0) total = sat_add(total, std::max(in[v], out[v]));
  return total;
}

// Minimum dominating set DP. States per vertex v:
//   a: v in the set
//   b: v not in the set, dominated by a child
//   c: v not in the set, not yet dominated (parent must be in the set)
std::int64_t domination_dp(const Graph& g, const std::vector<bool>& allow_in,
                           const std::vector<bool>& allow_out) {
  const Rooted r = root_forest(g);
  const std::size_t size = std::size_t{g.n()} + 1;
  std::vector<std::int64_t> a(size, 1), b(size, 0), c(size, 0), best_gap(size, kInf);
  for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
    const VertexId v = *it;
    // b still holds Σ min(a, b) over children; add the cheapest switch to a.
    b[v] = best_gap[v] >= kInf ? kInf : sat_add(b[v], best_gap[v]);
    if (!allow_in[v]) a[v] = kInf;
    if (!allow_out[v]) b[v] = c[v] = kInf;
    if (const VertexId p = r.parent[v]; p != 0) {
      a[p] = sat_add(a[p], std::min({a[v], b[v], c[v]}));
      const std::int64_t ab = std::min(a[v], b[v]);
      b[p] = sat_add(b[p], ab);
      if (a[v] < kInf) best_gap[p] = std::min(best_gap[p], a[v] - ab);
      c[p] = sat_add(c[p], b[v]);
    }
  }
  std::int64_t total = 0;
  for (VertexId v : r.order)
    if (r.parent[v] == 0) total = sat_add(total, std::min(a[v], b[v]));
  return total;
}

}  // namespace

std::int64_t forest_independence(const Graph& g) {
  const std::vector<bool> all(std::size_t{g.n()} + 1, true);
  return independence_dp(g, all, all);
}

std::int64_t forest_domination(const Graph& g) {
  const std::vector<bool> all(std::size_t{g.n()} + 1, true);
  return domination_dp(g, all, all);
}

namespace {

// Maximum matching DP. f0: v not matched to a child; f1: v matched to a child.
// can_pair(parent, child) restricts which tree edges may be used and
// must_match marks vertices that may not stay unmatched.
template <class CanPair>
std::int64_t matching_dp(const Graph& g, const std::vector<bool>& must_match, CanPair can_pair) {
  const Rooted r = root_forest(g);
  const std::size_t size = std::size_t{g.n()} + 1;
  std::vector<std::int64_t> f0(size, 0), f1(size, kNegInf);
  // Value a child contributes when it is not matched to its parent.
  auto free_value = [&](VertexId v) { return must_match[v] ? f1[v] : std::max(f0[v], f1[v]); };
  for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
    const VertexId v = *it;
    std::int64_t finite_sum = 0;
    int infeasible = 0;
    for (VertexId c : g.neighbors(v)) {
      if (c == r.parent[v]) continue;
      const std::int64_t fc = free_value(c);
      if (fc <= kNegInf) ++infeasible; else finite_sum += fc;
    }
    f0[v] = infeasible == 0 ? finite_sum : kNegInf;
    for (VertexId c : g.neighbors(v)) {
      if (c == r.parent[v] || f0[c] <= kNegInf || !can_pair(v, c)) continue;
      const std::int64_t fc = free_value(c);
      std::int64_t others;
      if (fc <= kNegInf) {
        others = infeasible == 1 ? finite_sum : kNegInf;
      } else {
        others = infeasible == 0 ? finite_sum - fc : kNegInf;
      }
      if (others > kNegInf) f1[v] = std::max(f1[v], others + f0[c] + 1);
    }
  }
  std::int64_t total = 0;
  for (VertexId v : r.order)
    if (r.parent[v] == 0) total = sat_add(total, free_value(v));
  return total;
}

}  // namespace

std::int64_t forest_matching(const Graph& g) {
  const std::vector<bool> none(std::size_t{g.n()} + 1, false);
  return matching_dp(g, none, [](VertexId, VertexId) { return true; });
}

std::int64_t independence_all_leaves_no_support(const Graph& forest) {
  require_components_of_three(forest);
  const auto leaf = leaf_mask(forest);
  const auto supp = support_mask(forest, leaf);
  std::vector<bool> allow_in(std::size_t{forest.n()} + 1), allow_out(std::size_t{forest.n()} + 1);
  for (VertexId v = 1; v <= forest.n(); ++v) {
    allow_in[v] = !supp[v];
    allow_out[v] = !leaf[v];
  }
  return independence_dp(forest, allow_in, allow_out);
}

std::int64_t domination_all_support_no_leaf(const Graph& forest) {
  require_components_of_three(forest);
  const auto leaf = leaf_mask(forest);
  const auto supp = support_mask(forest, leaf);
  std::vector<bool> allow_in(std::size_t{forest.n()} + 1), allow_out(std::size_t{forest.n()} + 1);
  for (VertexId v = 1; v <= forest.n(); ++v) {
    allow_in[v] = !leaf[v];
    allow_out[v] = !supp[v];
  }
  return domination_dp(forest, allow_in, allow_out);
}

std::int64_t matching_support_to_leaf(const Graph& forest) {
  require_components_of_three(forest);
  const auto leaf = leaf_mask(forest);
  const auto supp = support_mask(forest, leaf);
  return matching_dp(forest, supp, [&](VertexId p, VertexId c) {
    return (!supp[p] || leaf[c]) && (!supp[c] || leaf[p]);
  });
}

GroundTruth ground_truth(const Graph& g) {
  GroundTruth t;
  t.n = g.n();
  t.m = g.m();
  t.lambda = exact_lambda(g);
  t.avg_degree = Rational(2 * g.m(), static_cast<std::int64_t>(g.n()));
  std::vector<std::uint32_t> label;
  t.components = label_components(g, label);
  const auto leaf = leaf_mask(g);
  const auto supp = support_mask(g, leaf);
  for (VertexId v = 1; v <= g.n(); ++v) {
    const auto d = g.degree(v);
    t.max_degree = std::max(t.max_degree, d);
    if (d == 0) ++t.isolated;
    if (d == 1) ++t.deg1;
    if (d >= 2) ++t.deg_ge2;
    if (supp[v]) ++t.supp;
  }
  t.is_forest = g.m() == static_cast<std::int64_t>(g.n()) - t.components;
  if (t.is_forest) {
    t.beta = forest_independence(g);
    t.gamma = forest_domination(g);
    t.phi = forest_matching(g);
  }
  return t;
}

GroundTruth exact_params(const Graph& g) {
  if (!is_forest(g)) throw Error(ErrorKind::NotAForest, "graph contains a cycle");
  return ground_truth(g);
}

// ---------------------------------------------------------------------------
// Exhaustive references
// ---------------------------------------------------------------------------

namespace {

constexpr std::uint32_t kBruteLimit = 20;

std::vector<std::uint32_t> adjacency_masks(const Graph& g) {
  if (g.n() > kBruteLimit) throw Error(ErrorKind::TooLarge, "exhaustive search needs n <= 20");
  std::vector<std::uint32_t> mask(g.n(), 0);
  for (VertexId v = 1; v <= g.n(); ++v)
    for (VertexId w : g.neighbors(v)) mask[v - 1] |= 1u << (w - 1);
  return mask;
}

std::int64_t mis_rec(std::uint32_t avail, const std::vector<std::uint32_t>& adj) {
  if (avail == 0) return 0;
  const int v = std::countr_zero(avail);
  const std::uint32_t rest = avail & ~(1u << v);
  if ((adj[v] & rest) == 0) return 1 + mis_rec(rest, adj);  // isolated in avail: always take
  return std::max(mis_rec(rest, adj), 1 + mis_rec(rest & ~adj[v], adj));
}

std::int64_t matching_rec(std::uint32_t avail, const std::vector<std::uint32_t>& adj) {
  if (avail == 0) return 0;
  const int v = std::countr_zero(avail);
  const std::uint32_t rest = avail & ~(1u << v);
  std::int64_t best = matching_rec(rest, adj);
  for (std::uint32_t nb = adj[v] & rest; nb != 0; nb &= nb - 1) {
    const int w = std::countr_zero(nb);
    best = std::max(best, 1 + matching_rec(rest & ~(1u << w), adj));
  }
  return best;
}

}  // namespace

std::int64_t brute_independence(const Graph& g) {
  const auto adj = adjacency_masks(g);
  const std::uint32_t all = g.n() == 32 ? ~0u : (1u << g.n()) - 1;
  return mis_rec(all, adj);
}

std::int64_t brute_domination(const Graph& g) {
  const auto adj = adjacency_masks(g);
  const std::uint32_t n = g.n();
  if (n == 0) return 0;
  const std::uint32_t all = (1u << n) - 1;
  std::vector<std::uint32_t> covered(std::size_t{1} << n, 0);
  std::int64_t best = n;
  for (std::uint32_t s = 1; s <= all; ++s) {
    const int v = std::countr_zero(s);
    covered[s] = covered[s & (s - 1)] | adj[v] | (1u << v);
    if (covered[s] == all) best = std::min<std::int64_t>(best, std::popcount(s));
  }
  return best;
}

std::int64_t brute_matching(const Graph& g) {
  const auto adj = adjacency_masks(g);
  const std::uint32_t all = g.n() == 0 ? 0 : (1u << g.n()) - 1;
  return matching_rec(all, adj);
}

// ---------------------------------------------------------------------------
// Greedy permutations and min-first probabilities
// ---------------------------------------------------------------------------

std::vector<VertexId> greedy_permutation_is(const Graph& g, std::span<const std::uint32_t> position) {
  if (position.size() < std::size_t{g.n()} + 1)
    throw Error(ErrorKind::InvalidArgument, "position must be indexed by vertex id 1..n");
  std::vector<VertexId> out;
  for (VertexId v = 1; v <= g.n(); ++v) {
    const bool first = std::all_of(g.neighbors(v).begin(), g.neighbors(v).end(),
                                   [&](VertexId u) { return position[v] < position[u]; });
    if (first) out.push_back(v);
  }
  return out;
}

CondProb min_first_cond_prob(const Graph& g, VertexId x, VertexId y) {
  if (g.n() > 10) throw Error(ErrorKind::TooLarge, "permutation enumeration needs n <= 10");
  if (x < 1 || y < 1 || x > g.n() || y > g.n() || x == y)
    throw Error(ErrorKind::InvalidArgument, "x and y must be distinct vertices");
  if (g.adjacent(x, y)) throw Error(ErrorKind::AdjacentPair, "x and y are adjacent");

  std::vector<VertexId> order(g.n());
  std::iota(order.begin(), order.end(), VertexId{1});
  std::vector<std::uint32_t> position(std::size_t{g.n()} + 1, 0);
  auto first_in_closed_nbhd = [&](VertexId v) {
    for (VertexId u : g.neighbors(v))
      if (position[u] < position[v]) return false;
    return true;
  };
  std::int64_t total = 0, x_first = 0, both = 0;
  do {
    for (std::uint32_t i = 0; i < order.size(); ++i) position[order[i]] = i;
    ++total;
    if (first_in_closed_nbhd(x)) {
      ++x_first;
      if (first_in_closed_nbhd(y)) ++both;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return {Rational(both, total), Rational(both, x_first)};
}

Rational min_first_cond_closed_form(std::int64_t l, std::int64_t k, std::int64_t r) {
  return Rational(l + r + 2 * k + 2, (r + k + 1) * (l + k + r + 2));
}

// ---------------------------------------------------------------------------
// Prüfer enumeration
// ---------------------------------------------------------------------------

std::vector<Edge> prufer_decode_edges(std::uint32_t n, std::span<const VertexId> seq) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "trees need n >= 2");
  if (seq.size() != n - 2) throw Error(ErrorKind::InvalidArgument, "Prüfer sequence must have length n - 2");
  std::vector<std::uint32_t> degree(std::size_t{n} + 1, 1);
  for (VertexId s : seq) {
    if (s < 1 || s > n) throw Error(ErrorKind::IdOutOfRange, "Prüfer entry outside [1, n]");
    ++degree[s];
  }
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  // Linear-time decoding: `ptr` scans for the smallest leaf, `leaf` follows
  // chains of freshly created leaves smaller than ptr.
  VertexId ptr = 1;
  while (degree[ptr] != 1) ++ptr;
  VertexId leaf = ptr;
  for (VertexId s : seq) {
    edges.emplace_back(leaf, s);
    if (--degree[s] == 1 && s < ptr) {
      leaf = s;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(leaf, n);
  return edges;
}

Graph prufer_decode(std::uint32_t n, std::span<const VertexId> seq) {
  const auto edges = prufer_decode_edges(n, seq);
  return Graph::from_edges(n, edges);
}

std::uint64_t labeled_tree_count(std::uint32_t n) {
  if (n <= 2) return 1;
  std::uint64_t c = 1;
  for (std::uint32_t i = 0; i < n - 2; ++i) c *= n;
  return c;
}

void for_each_tree(std::uint32_t n, const std::function<void(const Graph&)>& fn) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "trees need n >= 2");
  if (n > 9) throw Error(ErrorKind::TooLarge, "tree enumeration supports n <= 9");
  std::vector<VertexId> seq(n - 2, 1);
  while (true) {
    fn(prufer_decode(n, seq));
    std::size_t i = 0;
    while (i < seq.size() && seq[i] == n) seq[i++] = 1;
    if (i == seq.size()) break;
    ++seq[i];
  }
}

}  // namespace sparsestream
