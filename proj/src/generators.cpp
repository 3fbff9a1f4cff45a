#include "sparsestream/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "sparsestream/detail/mix.hpp"

namespace sparsestream {

const char* to_string(ForestShape shape) {
  switch (shape) {
    case ForestShape::UniformRandomTree: return "random-tree";
    case ForestShape::PathBundle: return "path";
    case ForestShape::SpiderP4: return "spider-p4";
    case ForestShape::StarWithLeaves: return "star-with-leaves";
    case ForestShape::P3Spider: return "p3-spider";
    case ForestShape::RandomForest: return "random-forest";
    case ForestShape::Caterpillar: return "caterpillar";
  }
  return "unknown";
}

ForestShape parse_shape(std::string_view name) {
  for (auto s : {ForestShape::UniformRandomTree, ForestShape::PathBundle, ForestShape::SpiderP4,
                 ForestShape::StarWithLeaves, ForestShape::P3Spider, ForestShape::RandomForest,
                 ForestShape::Caterpillar}) {
    if (name == to_string(s)) return s;
  }
  throw Error(ErrorKind::InvalidShapeParams, "unknown shape '" + std::string(name) + "'");
}

namespace {

[[noreturn]] void bad_shape(const std::string& why) { throw Error(ErrorKind::InvalidShapeParams, why); }

std::uint32_t derived_n(const ForestSpec& spec, std::uint64_t n_of_r, std::uint32_t min_r) {
  if (spec.r < min_r) bad_shape(std::string(to_string(spec.shape)) + " needs r >= " + std::to_string(min_r));
  if (n_of_r > 0xffffffffULL) bad_shape("shape too large");
  if (spec.n != 0 && spec.n != n_of_r)
    bad_shape(std::string(to_string(spec.shape)) + " with r=" + std::to_string(spec.r) + " has n=" +
              std::to_string(n_of_r) + ", not " + std::to_string(spec.n));
  return static_cast<std::uint32_t>(n_of_r);
}

std::uint32_t path_count(const ForestSpec& spec) { return spec.r == 0 ? 1 : spec.r; }

// Sizes of `parts` components summing to n, each >= 2.
std::vector<std::uint32_t> random_composition(std::uint32_t n, std::uint32_t parts, std::mt19937_64& rng) {
  std::vector<std::uint32_t> size(parts, 2);
  std::uniform_int_distribution<std::uint32_t> pick(0, parts - 1);
  for (std::uint32_t extra = n - 2 * parts; extra > 0; --extra) ++size[pick(rng)];
  return size;
}

}  // namespace

std::uint32_t resolve_n(const ForestSpec& spec) {
  const std::uint64_t r = spec.r;
  switch (spec.shape) {
    case ForestShape::SpiderP4: return derived_n(spec, 4 * r + 2, 1);
    case ForestShape::StarWithLeaves: return derived_n(spec, 2 * (r + 1), 1);
    case ForestShape::P3Spider: return derived_n(spec, 3 * r + 1, 1);
    case ForestShape::Caterpillar: return derived_n(spec, 2 * r, 2);
    case ForestShape::UniformRandomTree:
      if (spec.n < 2) bad_shape("random-tree needs n >= 2");
      return spec.n;
    case ForestShape::PathBundle:
    case ForestShape::RandomForest: {
      const std::uint32_t parts = path_count(spec);
      if (spec.n < 2 || static_cast<std::uint64_t>(spec.n) < 2ULL * parts)
        bad_shape(std::string(to_string(spec.shape)) + " needs n >= 2r and n >= 2");
      return spec.n;
    }
  }
  bad_shape("unknown shape");
}

std::vector<Edge> random_tree_edges(std::uint32_t n, std::mt19937_64& rng) {
  if (n < 2) bad_shape("trees need n >= 2");
  std::vector<VertexId> seq(n - 2);
  std::uniform_int_distribution<VertexId> pick(1, n);
  for (auto& s : seq) s = pick(rng);
  return prufer_decode_edges(n, seq);
}

std::vector<Edge> forest_edges(const ForestSpec& spec) {
  const std::uint32_t n = resolve_n(spec);
  std::vector<Edge> edges;
  edges.reserve(n);
  std::mt19937_64 rng(spec.seed);
  switch (spec.shape) {
    case ForestShape::UniformRandomTree:
      edges = random_tree_edges(n, rng);
      break;
    case ForestShape::PathBundle: {
      const std::uint32_t parts = path_count(spec);
      VertexId next = 1;
      for (std::uint32_t i = 0; i < parts; ++i) {
        const std::uint32_t len = n / parts + (i < n % parts ? 1 : 0);
        for (std::uint32_t j = 1; j < len; ++j) edges.emplace_back(next + j - 1, next + j);
        next += len;
      }
      break;
    }
    case ForestShape::SpiderP4: {
      // 1 = centre, 2 = its leaf, then legs 1-a-b-c-d.
      edges.emplace_back(1, 2);
      for (std::uint32_t i = 0; i < spec.r; ++i) {
        const VertexId a = 3 + 4 * i;
        edges.emplace_back(1, a);
        edges.emplace_back(a, a + 1);
        edges.emplace_back(a + 1, a + 2);
        edges.emplace_back(a + 2, a + 3);
      }
      break;
    }
    case ForestShape::StarWithLeaves: {
      // Star on 1..r+1 centred at 1; vertex v gets leaf v + r + 1.
      const std::uint32_t h = spec.r + 1;
      for (VertexId v = 2; v <= h; ++v) edges.emplace_back(1, v);
      for (VertexId v = 1; v <= h; ++v) edges.emplace_back(v, v + h);
      break;
    }
    case ForestShape::P3Spider: {
      for (std::uint32_t i = 0; i < spec.r; ++i) {
        const VertexId a = 2 + 3 * i;
        edges.emplace_back(1, a);
        edges.emplace_back(a, a + 1);
        edges.emplace_back(a + 1, a + 2);
      }
      break;
    }
    case ForestShape::Caterpillar: {
      for (VertexId v = 1; v < spec.r; ++v) edges.emplace_back(v, v + 1);
      for (VertexId v = 1; v <= spec.r; ++v) edges.emplace_back(v, v + spec.r);
      break;
    }
    case ForestShape::RandomForest: {
      const std::uint32_t parts = path_count(spec);
      std::vector<VertexId> label(n);
      std::iota(label.begin(), label.end(), VertexId{1});
      std::shuffle(label.begin(), label.end(), rng);
      std::uint32_t offset = 0;
      for (std::uint32_t size : random_composition(n, parts, rng)) {
        for (const Edge& e : random_tree_edges(size, rng))
          edges.emplace_back(label[offset + e.u - 1], label[offset + e.v - 1]);
        offset += size;
      }
      break;
    }
  }
  return edges;
}

StreamSequence stream_from_edges(std::uint32_t n, std::span<const Edge> edges, const StreamOptions& opt) {
  std::mt19937_64 rng(detail::mix(opt.seed, 0x73747265616dULL));
  StreamBuilder builder(n, opt.model);
  builder.set_order(opt.order);

  if (opt.model == StreamModel::VertexArrival) {
    if (opt.deletion_rate != 0.0)
      throw Error(ErrorKind::DeletionUnsupported, "vertex-arrival streams carry no deletions");
    std::vector<VertexId> arrival(n);
    std::iota(arrival.begin(), arrival.end(), VertexId{1});
    if (opt.order == StreamOrder::Random) std::shuffle(arrival.begin(), arrival.end(), rng);
    std::vector<std::uint32_t> position(std::size_t{n} + 1);
    for (std::uint32_t i = 0; i < n; ++i) position[arrival[i]] = i;
    std::vector<std::vector<VertexId>> prior(std::size_t{n} + 1);
    for (const Edge& e : edges) {
      if (position[e.u] < position[e.v]) prior[e.v].push_back(e.u);
      else prior[e.u].push_back(e.v);
    }
    for (VertexId v : arrival) {
      std::sort(prior[v].begin(), prior[v].end());
      builder.push(StreamUpdate::arrival(v, std::move(prior[v])));
    }
    return std::move(builder).build();
  }

  if (opt.deletion_rate < 0.0 || !std::isfinite(opt.deletion_rate))
    throw Error(ErrorKind::InvalidArgument, "deletion rate must be a finite fraction >= 0");
  const auto decoys = static_cast<std::uint64_t>(std::llround(opt.deletion_rate * static_cast<double>(edges.size())));
  if (decoys > 4ULL * n)
    throw Error(ErrorKind::DeletionBudgetExceeded, "decoy deletions exceed the 4n budget");
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (decoys > pairs - edges.size())
    throw Error(ErrorKind::InvalidShapeParams, "not enough non-edges for the requested decoys");

  std::unordered_set<std::uint64_t> taken;
  taken.reserve(edges.size() + decoys);
  for (const Edge& e : edges) taken.insert(e.key());
  std::vector<Edge> decoy;
  decoy.reserve(decoys);
  std::uniform_int_distribution<VertexId> pick(1, n);
  while (decoy.size() < decoys) {
    const VertexId a = pick(rng), b = pick(rng);
    if (a == b) continue;
    const Edge e(a, b);
    if (taken.insert(e.key()).second) decoy.push_back(e);
  }

  std::vector<StreamUpdate> updates;
  updates.reserve(edges.size() + 2 * decoy.size());
  if (opt.order == StreamOrder::Random) {
    for (const Edge& e : edges) updates.push_back(StreamUpdate::insert(e.u, e.v));
    for (const Edge& e : decoy) {
      updates.push_back(StreamUpdate::insert(e.u, e.v));
      updates.push_back(StreamUpdate::erase(e.u, e.v));
    }
    std::shuffle(updates.begin(), updates.end(), rng);
    // Restore insert-before-delete for each decoy by swapping the pair's slots.
    std::unordered_map<std::uint64_t, std::size_t> first_seen;
    for (std::size_t i = 0; i < updates.size(); ++i) {
      const std::uint64_t key = Edge(updates[i].u, updates[i].v).key();
      auto [it, fresh] = first_seen.emplace(key, i);
      if (!fresh && updates[it->second].kind == UpdateKind::EdgeDelete)
        std::swap(updates[it->second].kind, updates[i].kind);
    }
  } else {
    // Decoys open before the forest arrives and close after it.
    for (const Edge& e : decoy) updates.push_back(StreamUpdate::insert(e.u, e.v));
    for (const Edge& e : edges) updates.push_back(StreamUpdate::insert(e.u, e.v));
    for (const Edge& e : decoy) updates.push_back(StreamUpdate::erase(e.u, e.v));
  }
  for (auto& u : updates) builder.push(std::move(u));
  return std::move(builder).build();
}

Generated generate_forest(const ForestSpec& spec) {
  const std::uint32_t n = resolve_n(spec);
  const std::vector<Edge> edges = forest_edges(spec);
  StreamOptions opt{spec.order, spec.model, spec.deletion_rate, spec.seed};
  StreamSequence stream = stream_from_edges(n, edges, opt);
  GroundTruth truth = exact_params(Graph::from_edges(n, edges));
  if (truth.isolated != 0) bad_shape("generated forest has isolated vertices");
  return {std::move(stream), std::move(truth)};
}

std::vector<Edge> random_sparse_graph(std::uint32_t n, double avg_degree, std::uint32_t max_degree,
                                      std::uint64_t seed) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "random graph needs n >= 2");
  const auto m = static_cast<std::uint64_t>(std::llround(avg_degree * n / 2.0));
  if (max_degree == 0 || m > static_cast<std::uint64_t>(n) * max_degree / 2 ||
      m > static_cast<std::uint64_t>(n) * (n - 1) / 2)
    throw Error(ErrorKind::InvalidArgument, "degree cap leaves no room for the requested edges");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> pick(1, n);
  std::vector<std::uint32_t> degree(std::size_t{n} + 1, 0);
  std::unordered_set<std::uint64_t> taken;
  std::vector<Edge> edges;
  edges.reserve(m);
  std::uint64_t rejections = 0;
  while (edges.size() < m) {
    const VertexId a = pick(rng), b = pick(rng);
    if (a == b || degree[a] >= max_degree || degree[b] >= max_degree || !taken.insert(Edge(a, b).key()).second) {
      if (++rejections > 1000ULL * (m + n))
        throw Error(ErrorKind::InvalidArgument, "could not place edges under the degree cap");
      continue;
    }
    ++degree[a];
    ++degree[b];
    edges.emplace_back(a, b);
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace sparsestream
