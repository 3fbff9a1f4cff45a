#include "sparsestream/carowei.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include "sparsestream/detail/mix.hpp"
#include "sparsestream/sketch/count_min.hpp"

namespace sparsestream {

using detail::mix;

namespace {

constexpr std::uint64_t kHashSalt = 0x68617368ULL;
constexpr std::uint64_t kSampleSalt = 0x73616d70ULL;
constexpr std::uint64_t kHeavySalt = 0x68656176ULL;

void require_insertion_only_edges(const StreamSequence& stream) {
  if (stream.model() != StreamModel::EdgeArrival)
    throw Error(ErrorKind::IncompatibleStreamModel, "estimator needs an edge-arrival stream");
  if (!stream.insertion_only())
    throw Error(ErrorKind::DeletionUnsupported, "estimator needs an insertion-only stream");
}

void check_config(const CwConfig& cfg) {
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
    throw Error(ErrorKind::EpsilonOutOfRange, "epsilon must lie in (0, 1)");
  if (!(cfg.avg_degree_bound >= 0.0)) throw Error(ErrorKind::InvalidArgument, "average degree must be >= 0");
}

Ranker default_ranker(const CwConfig& cfg, std::uint32_t n, std::uint64_t salt) {
  return Ranker::from_hash(MinWiseHash(cfg.epsilon, n, mix(cfg.seed, salt), cfg.c_h));
}

bool contains(const std::vector<VertexId>& sorted, VertexId v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

}  // namespace

double cw_sampling_probability(const CwConfig& cfg, std::uint32_t n) {
  if (cfg.p_override) {
    if (!(*cfg.p_override > 0.0)) throw Error(ErrorKind::InvalidArgument, "sampling probability must be > 0");
    return std::min(1.0, *cfg.p_override);
  }
  return std::min(1.0, 4.0 * (cfg.avg_degree_bound + 1.0) / (cfg.epsilon * cfg.epsilon * n));
}

Ranker Ranker::from_hash(MinWiseHash hash) {
  Ranker r;
  r.hash_ = std::make_shared<const MinWiseHash>(std::move(hash));
  return r;
}

Ranker Ranker::from_positions(std::vector<std::uint32_t> position) {
  Ranker r;
  r.position_ = std::make_shared<const std::vector<std::uint32_t>>(std::move(position));
  return r;
}

std::uint64_t Ranker::rank(VertexId v) const {
  if (hash_) return (*hash_)(v);
  if (v >= position_->size()) throw Error(ErrorKind::DomainViolation, "vertex outside the permutation");
  return (*position_)[v];
}

std::size_t Ranker::space_bytes() const {
  if (hash_) return hash_->inner().space_bytes();
  return position_->size() * sizeof(std::uint32_t);
}

std::vector<VertexId> cw_sample(std::uint32_t n, double p, SampleMode mode, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<VertexId> s;
  if (p >= 1.0) {
    s.resize(n);
    for (VertexId v = 1; v <= n; ++v) s[v - 1] = v;
    return s;
  }
  if (mode == SampleMode::Bernoulli) {
    std::bernoulli_distribution coin(p);
    for (VertexId v = 1; v <= n; ++v)
      if (coin(rng)) s.push_back(v);
    return s;
  }
  // Floyd's algorithm: exactly k distinct ids in O(k) space.
  const auto k = static_cast<std::uint32_t>(std::min<double>(n, std::ceil(p * n)));
  std::unordered_set<VertexId> chosen;
  chosen.reserve(k);
  for (std::uint32_t j = n - k + 1; j <= n; ++j) {
    const VertexId t = std::uniform_int_distribution<VertexId>(1, j)(rng);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  s.assign(chosen.begin(), chosen.end());
  std::sort(s.begin(), s.end());
  return s;
}

CwResult cw_base(const StreamSequence& stream, const CwConfig& cfg, const Ranker* ranker) {
  require_insertion_only_edges(stream);
  check_config(cfg);
  const std::uint32_t n = stream.n();
  CwResult res;
  res.p = cw_sampling_probability(cfg, n);
  res.exact_sampling = res.p >= 1.0;
  const Ranker own = ranker ? Ranker{} : default_ranker(cfg, n, kHashSalt);
  const Ranker& h = ranker ? *ranker : own;

  const std::vector<VertexId> sample = cw_sample(n, res.p, cfg.sample_mode, mix(cfg.seed, kSampleSalt));
  std::vector<char> alive(sample.size(), 1);
  auto knock_out = [&](VertexId u, VertexId v) {
    const auto it = std::lower_bound(sample.begin(), sample.end(), u);
    if (it == sample.end() || *it != u) return;
    char& a = alive[static_cast<std::size_t>(it - sample.begin())];
    if (a && h.before(v, u)) a = 0;
  };
  for (const StreamUpdate& up : stream.updates()) {
    knock_out(up.u, up.v);
    knock_out(up.v, up.u);
  }
  res.sample_size = sample.size();
  res.retained = static_cast<std::size_t>(std::count(alive.begin(), alive.end(), 1));
  res.estimate = std::min<double>(n, static_cast<double>(res.retained) / res.p);
  res.space_bytes = sample.size() * (sizeof(VertexId) + 1) + h.space_bytes();
  return res;
}

std::size_t CwSolution::size() const {
  return static_cast<std::size_t>(std::count(bits.begin() + 1, bits.end(), true));
}

CwSolution cw_online(const StreamSequence& stream, double epsilon, std::uint64_t seed,
                     const CwObserver& observer, const Ranker* ranker) {
  require_insertion_only_edges(stream);
  CwConfig cfg;
  cfg.epsilon = epsilon;
  cfg.seed = seed;
  check_config(cfg);
  const Ranker own = ranker ? Ranker{} : default_ranker(cfg, stream.n(), kHashSalt);
  const Ranker& h = ranker ? *ranker : own;
  CwSolution sol;
  sol.bits.assign(std::size_t{stream.n()} + 1, true);
  sol.bits[0] = false;
  sol.space_bytes = h.space_bytes();
  std::size_t index = 0;
  for (const StreamUpdate& up : stream.updates()) {
    // The later endpoint in the permutation can never be first in its
    // closed neighbourhood; clear it irrevocably.
    sol.bits[h.before(up.u, up.v) ? up.v : up.u] = false;
    if (observer) observer(index, up, sol.bits);
    ++index;
  }
  return sol;
}

double cw_heavy_threshold(const CwConfig& cfg) {
  const double d1 = cfg.avg_degree_bound + 1.0;
  return cfg.epsilon * cfg.epsilon / (6.0 * d1 * d1 * d1 * d1);
}

namespace {

sketch::CountMinHH make_heavy_sketch(const CwConfig& cfg, std::uint32_t n, double c_prime) {
  const double psi = cw_heavy_threshold(cfg);
  const double delta = std::clamp(std::pow(static_cast<double>(n), -c_prime), 1e-300, 0.5);
  return sketch::CountMinHH(n, psi, psi, delta, mix(cfg.seed, kHeavySalt));
}

std::vector<VertexId> heavy_ids(const sketch::CountMinHH& hh) {
  std::vector<VertexId> r;
  for (const auto& [id, est] : hh.heavy_hitters()) r.push_back(id);
  return r;
}

struct Instance {
  Ranker ranker;
  std::vector<VertexId> sample;
  std::vector<std::vector<VertexId>> lists;  // aligned with sample
  std::size_t stored = 0;
  std::size_t peak = 0;
  bool aborted = false;
};

}  // namespace

CwResult cw_unbounded(const StreamSequence& stream, const CwConfig& cfg, double c_prime,
                      std::optional<std::vector<VertexId>> heavy) {
  require_insertion_only_edges(stream);
  check_config(cfg);
  if (!(c_prime > 0.0)) throw Error(ErrorKind::InvalidArgument, "c' must be positive");
  const std::uint32_t n = stream.n();
  CwResult res;
  res.p = cw_sampling_probability(cfg, n);
  res.exact_sampling = res.p >= 1.0;

  std::vector<VertexId> known_heavy;
  if (heavy) {
    known_heavy = *heavy;
    std::sort(known_heavy.begin(), known_heavy.end());
  }
  std::optional<sketch::CountMinHH> hh;
  if (!heavy) hh.emplace(make_heavy_sketch(cfg, n, c_prime));

  const auto count = static_cast<std::size_t>(std::max(1.0, std::ceil(c_prime * std::log2(std::max(2u, n)))));
  const double budget = cfg.abort_factor * cfg.avg_degree_bound * res.p * n;
  std::vector<Instance> inst(count);
  for (std::size_t t = 0; t < count; ++t) {
    inst[t].ranker = default_ranker(cfg, n, mix(kHashSalt, t));
    inst[t].sample = cw_sample(n, res.p, cfg.sample_mode, mix(cfg.seed, kSampleSalt, t));
    if (heavy)
      std::erase_if(inst[t].sample, [&](VertexId v) { return contains(known_heavy, v); });
    inst[t].lists.resize(inst[t].sample.size());
    inst[t].stored = inst[t].peak = inst[t].sample.size();
  }

  auto record = [&](Instance& in, VertexId u, VertexId v) {
    const auto it = std::lower_bound(in.sample.begin(), in.sample.end(), u);
    if (it == in.sample.end() || *it != u) return;
    if (heavy && contains(known_heavy, v)) return;
    in.lists[static_cast<std::size_t>(it - in.sample.begin())].push_back(v);
    in.peak = std::max(in.peak, ++in.stored);
    if (static_cast<double>(in.stored) > budget) {
      in.aborted = true;
      in.lists = {};
    }
  };

  for (const StreamUpdate& up : stream.updates()) {
    if (hh) {
      hh->update(up.u, 1);
      hh->update(up.v, 1);
    }
    for (auto& in : inst) {
      if (in.aborted) continue;
      record(in, up.u, up.v);
      if (!in.aborted) record(in, up.v, up.u);
    }
  }

  const std::vector<VertexId> r = heavy ? known_heavy : heavy_ids(*hh);
  const std::unordered_set<VertexId> rset(r.begin(), r.end());
  res.heavy = r;
  res.instances = count;
  res.space_bytes = hh ? hh->space_bytes() : r.size() * sizeof(VertexId);
  bool any = false;
  for (const auto& in : inst) {
    res.space_bytes += in.peak * sizeof(VertexId) + in.ranker.space_bytes();
    if (in.aborted) {
      ++res.aborted;
      continue;
    }
    std::size_t retained = 0;
    for (std::size_t k = 0; k < in.sample.size(); ++k) {
      const VertexId u = in.sample[k];
      if (rset.count(u)) continue;
      const bool first = std::all_of(in.lists[k].begin(), in.lists[k].end(), [&](VertexId v) {
        return rset.count(v) != 0 || in.ranker.before(u, v);
      });
      if (first) ++retained;
    }
    const double est = std::min<double>(n, static_cast<double>(retained) / res.p);
    if (!any || est > res.estimate) {
      res.estimate = est;
      res.retained = retained;
      res.sample_size = in.sample.size();
    }
    any = true;
  }
  if (!any)
    throw Error(ErrorKind::AllInstancesAborted,
                std::to_string(res.aborted) + " of " + std::to_string(count) +
                    " instances exceeded " + std::to_string(budget) + " stored entries");
  return res;
}

CwResult cw_unbounded_two_pass(const StreamSequence& stream, const CwConfig& cfg, double c_prime) {
  require_insertion_only_edges(stream);
  check_config(cfg);
  sketch::CountMinHH hh = make_heavy_sketch(cfg, stream.n(), c_prime);
  for (const StreamUpdate& up : stream.updates()) {
    hh.update(up.u, 1);
    hh.update(up.v, 1);
  }
  CwResult res = cw_unbounded(stream, cfg, c_prime, heavy_ids(hh));
  res.space_bytes += hh.space_bytes();
  return res;
}

CwResult cw_vertex_random(const StreamSequence& stream, const CwConfig& cfg) {
  if (stream.model() != StreamModel::VertexArrival)
    throw Error(ErrorKind::IncompatibleStreamModel, "cw-vertex needs a vertex-arrival stream");
  check_config(cfg);
  const std::uint32_t n = stream.n();
  CwResult res;
  res.p = cw_sampling_probability(cfg, n);
  res.exact_sampling = res.p >= 1.0;
  const double limit = cfg.abort_factor * res.p * n;
  std::uint64_t c = 0;
  std::uint64_t index = 0;
  for (const StreamUpdate& up : stream.updates()) {
    ++index;
    if (!up.neighbors.empty()) continue;
    if (res.p >= 1.0 || detail::to_unit_open(mix(cfg.seed, kSampleSalt, index)) < res.p) {
      if (static_cast<double>(++c) > limit)
        throw Error(ErrorKind::CounterOverflowAbort, "counter exceeded " + std::to_string(limit));
    }
  }
  res.retained = c;
  res.estimate = static_cast<double>(c) / res.p;
  res.space_bytes = 2 * sizeof(std::uint64_t);
  return res;
}

double boost(std::span<const double> estimates, BoostMode mode) {
  if (estimates.empty()) throw Error(ErrorKind::EmptyInput, "boost needs at least one estimate");
  if (mode == BoostMode::Max) return *std::max_element(estimates.begin(), estimates.end());
  std::vector<double> v(estimates.begin(), estimates.end());
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>((v.size() - 1) / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

std::uint32_t boost_trials(double delta, double c_b) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorKind::InvalidArgument, "delta must lie in (0, 1)");
  return std::max(1u, static_cast<std::uint32_t>(std::ceil(c_b * std::log(1.0 / delta))));
}

EstimateReport make_lambda_report(const CwResult& result, const CwConfig& cfg, std::uint32_t n,
                                  std::string algorithm, int passes) {
  EstimateReport r;
  r.parameter = Parameter::Lambda;
  r.algorithm = std::move(algorithm);
  r.point = result.estimate;
  const double slack = 3.0 * cfg.epsilon;
  r.lower = r.point / (1.0 + slack);
  r.upper = slack < 1.0 ? std::min<double>(n, r.point / (1.0 - slack)) : n;
  r.upper = std::max(r.upper, r.point);
  r.factor = 1.0;
  r.epsilon = cfg.epsilon;
  r.passes = passes;
  r.seed = cfg.seed;
  r.space_bytes = result.space_bytes;
  r.add_flag("max_degree_unverified");
  if (result.exact_sampling) r.add_flag("exact_sampling");
  r.details = {{"p", result.p},
               {"sample_size", static_cast<double>(result.sample_size)},
               {"retained", static_cast<double>(result.retained)}};
  if (result.instances != 0) {
    r.details.emplace_back("instances", static_cast<double>(result.instances));
    r.details.emplace_back("aborted", static_cast<double>(result.aborted));
    r.details.emplace_back("heavy", static_cast<double>(result.heavy.size()));
  }
  return r;
}

}  // namespace sparsestream
