#include "sparsestream/forest.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "sparsestream/detail/mix.hpp"
#include "sparsestream/sketch/l0.hpp"
#include "sparsestream/sketch/l1.hpp"
#include "sparsestream/sketch/sparse_recovery.hpp"

namespace sparsestream {

using detail::mix;

namespace {

constexpr std::uint64_t kDeg1Salt = 0x6465673131ULL;
constexpr std::uint64_t kDeg2Salt = 0x6465673232ULL;
constexpr std::uint64_t kSuppSalt = 0x73757070ULL;
constexpr std::uint64_t kCoreSalt = 0x636f7265ULL;

void check_stream(const StreamSequence& stream) {
  if (stream.n() < 2) throw Error(ErrorKind::InvalidArgument, "forest estimators need n >= 2");
  if (stream.has_isolated_vertices())
    throw Error(ErrorKind::IsolatedVertices, "final graph has isolated vertices");
}

void check_accuracy(double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorKind::EpsilonOutOfRange, "epsilon must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorKind::InvalidArgument, "delta must lie in (0, 1)");
}

/// One replay consumer. Edge events arrive with sign ±1; arrivals are
/// expanded into one insertion per earlier neighbour.
class Consumer {
 public:
  virtual ~Consumer() = default;
  virtual void on_edge(VertexId u, VertexId v, int sign, int pass) = 0;
  virtual void on_pass_end(int /*pass*/) {}
  virtual std::size_t space_bytes() const = 0;
};

/// Feeds every consumer the same replay, pass by pass.
void drive(const StreamSequence& stream, int passes, const std::vector<Consumer*>& consumers) {
  for (int pass = 0; pass < passes; ++pass) {
    replay(stream, 1, [&](const StreamUpdate& up, int) {
      if (up.is_edge()) {
        for (Consumer* c : consumers) c->on_edge(up.u, up.v, up.sign(), pass);
      } else {
        for (VertexId w : up.neighbors)
          for (Consumer* c : consumers) c->on_edge(up.u, w, 1, pass);
      }
      return ReplayControl::proceed();
    });
    for (Consumer* c : consumers) c->on_pass_end(pass);
  }
}

template <class Sketch>
Sketch checkpoint(const Sketch& s) {
  return Sketch::deserialize(s.serialize());
}

class EdgeCounter final : public Consumer {
 public:
  void on_edge(VertexId, VertexId, int sign, int pass) override {
    if (pass == 0) m_ += sign;
  }
  std::size_t space_bytes() const override { return sizeof(m_); }
  std::int64_t m() const { return m_; }

 private:
  std::int64_t m_ = 0;
};

/// |Deg≥2| from an L0 sketch of D - 1.
class NonLeafCounter final : public Consumer {
 public:
  NonLeafCounter(std::uint32_t n, double eps, double delta, std::uint64_t seed) : sk_(n, eps, delta, seed) {}
  void on_edge(VertexId u, VertexId v, int sign, int pass) override {
    if (pass != 0) return;
    sk_.update(u, sign);
    sk_.update(v, sign);
  }
  void on_pass_end(int pass) override {
    if (pass != 0) return;
    sk_.apply_uniform_offset(-1);
    sk_ = checkpoint(sk_);
  }
  std::size_t space_bytes() const override { return sk_.space_bytes(); }
  double estimate() const { return sk_.estimate(); }

 private:
  sketch::L0Sketch sk_;
};

/// ‖D - 2‖₁ from an L1 sketch; |Deg1| = that/2 + c.
class LeafCounter final : public Consumer {
 public:
  LeafCounter(std::uint32_t n, double eps, double delta, std::uint64_t seed) : sk_(n, eps, delta, seed) {}
  void on_edge(VertexId u, VertexId v, int sign, int pass) override {
    if (pass != 0) return;
    sk_.update(u, sign);
    sk_.update(v, sign);
  }
  void on_pass_end(int pass) override {
    if (pass != 0) return;
    sk_.apply_uniform_offset(-2);
    peak_ = std::max(peak_, sk_.space_bytes());
    sk_ = checkpoint(sk_);
  }
  std::size_t space_bytes() const override { return std::max(peak_, sk_.space_bytes()); }
  double leaves(std::int64_t c) const { return sk_.estimate() / 2.0 + static_cast<double>(c); }

 private:
  sketch::L1Sketch sk_;
  std::size_t peak_ = 0;
};

std::vector<VertexId> floyd_sample(std::uint32_t n, std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::unordered_set<VertexId> chosen;
  chosen.reserve(k);
  for (std::uint64_t j = n - k + 1; j <= n; ++j) {
    const auto t = static_cast<VertexId>(std::uniform_int_distribution<std::uint64_t>(1, j)(rng));
    if (!chosen.insert(t).second) chosen.insert(static_cast<VertexId>(j));
  }
  std::vector<VertexId> s(chosen.begin(), chosen.end());
  std::sort(s.begin(), s.end());
  return s;
}

class SupportSampler final : public Consumer {
 public:
  SupportSampler(std::uint32_t n, const SuppLargeConfig& cfg) : n_(n), c1_(cfg.c1) {
    if (cfg.sample) {
      sample_ = *cfg.sample;
      std::sort(sample_.begin(), sample_.end());
      sample_.erase(std::unique(sample_.begin(), sample_.end()), sample_.end());
      if (!sample_.empty() && (sample_.front() < 1 || sample_.back() > n))
        throw Error(ErrorKind::IdOutOfRange, "support sample outside 1..n");
    } else {
      sample_ = floyd_sample(n, supp_sample_size(n, cfg), cfg.seed);
    }
    lists_.resize(sample_.size());
    peak_ = sample_.size();
  }

  void on_edge(VertexId u, VertexId v, int sign, int pass) override {
    if (aborted_) return;
    if (pass == 0) {
      m_ += sign;
      toggle(u, v);
      toggle(v, u);
      const double limit = 2.0 * static_cast<double>(m_) / n_ * static_cast<double>(sample_.size()) *
                           std::exp(c1_ / 3.0);
      if (sign > 0 && static_cast<double>(t_) >= limit) {
        aborted_ = true;
        lists_ = {};
      }
    } else {
      if (auto it = degree_.find(u); it != degree_.end()) it->second += sign;
      if (auto it = degree_.find(v); it != degree_.end()) it->second += sign;
    }
  }

  void on_pass_end(int pass) override {
    if (pass != 0 || aborted_) return;
    for (const auto& l : lists_)
      for (VertexId w : l) degree_.emplace(w, 0);
    peak_degrees_ = degree_.size();
  }

  std::size_t space_bytes() const override {
    return peak_ * sizeof(VertexId) +
           peak_degrees_ * (sizeof(VertexId) + sizeof(std::int64_t));
  }

  SuppLargeResult result() const {
    SuppLargeResult r;
    r.aborted = aborted_;
    r.sample_size = sample_.size();
    r.peak_entries = peak_ - sample_.size();
    r.space_bytes = space_bytes();
    if (aborted_ || sample_.empty()) return r;
    for (const auto& l : lists_) {
      const bool hit = std::any_of(l.begin(), l.end(), [&](VertexId w) { return degree_.at(w) == 1; });
      if (hit) ++r.supported;
    }
    r.estimate = static_cast<double>(r.supported) * n_ / static_cast<double>(sample_.size());
    return r;
  }

 private:
  void toggle(VertexId a, VertexId b) {
    const auto it = std::lower_bound(sample_.begin(), sample_.end(), a);
    if (it == sample_.end() || *it != a) return;
    auto& l = lists_[static_cast<std::size_t>(it - sample_.begin())];
    if (auto pos = std::find(l.begin(), l.end(), b); pos != l.end()) {
      *pos = l.back();
      l.pop_back();
      --t_;
    } else {
      l.push_back(b);
      ++t_;
      peak_ = std::max(peak_, sample_.size() + t_);
    }
  }

  std::uint32_t n_;
  double c1_;
  std::vector<VertexId> sample_;
  std::vector<std::vector<VertexId>> lists_;  // aligned with sample_
  std::size_t t_ = 0;
  std::size_t peak_ = 0;  // |I| + max t
  std::int64_t m_ = 0;
  bool aborted_ = false;
  std::unordered_map<VertexId, std::int64_t> degree_;
  std::size_t peak_degrees_ = 0;
};

class SmallCoreRecovery final : public Consumer {
 public:
  SmallCoreRecovery(std::uint32_t n, double k2, double c2, std::uint64_t seed)
      : n_(n),
        sk_(n, static_cast<std::uint32_t>(std::clamp(std::ceil(k2), 1.0, static_cast<double>(n))),
            std::clamp(1.0 / c2, 1e-12, 0.5), seed) {}

  void on_edge(VertexId u, VertexId v, int sign, int pass) override {
    if (pass == 0) {
      sk_.update(u, sign);
      sk_.update(v, sign);
      return;
    }
    if (!failure_.empty()) return;
    m_ += sign;
    const auto iu = index(u), iv = index(v);
    if (iu) {
      d_[*iu] += sign;
      if (!iv) l_[*iu] += sign;
    }
    if (iv) {
      d_[*iv] += sign;
      if (!iu) l_[*iv] += sign;
    }
    if (!iu && !iv) p2_ += sign;
  }

  void on_pass_end(int pass) override {
    if (pass != 0) return;
    sk_.apply_uniform_offset(-1);
    sk_ = checkpoint(sk_);
    const auto decoded = sk_.decode();
    if (!decoded) {
      failure_ = "decode";
      return;
    }
    for (const auto& [id, value] : *decoded) {
      if (value < 1) {
        failure_ = "negative residue";
        return;
      }
      r_.push_back(id);
    }
    d_.assign(r_.size(), 0);
    l_.assign(r_.size(), 0);
  }

  std::size_t space_bytes() const override {
    return sk_.space_bytes() + r_.size() * (sizeof(VertexId) + 2 * sizeof(std::int64_t)) + 2 * sizeof(std::int64_t);
  }

  SmallCoreResult result() const {
    SmallCoreResult res;
    res.space_bytes = space_bytes();
    res.failure = failure_;
    if (!failure_.empty()) return res;
    std::int64_t sum_d = 0;
    std::int64_t supp = 0;
    for (std::size_t k = 0; k < r_.size(); ++k) {
      sum_d += d_[k];
      if (l_[k] >= 1) ++supp;
    }
    const auto rsize = static_cast<std::int64_t>(r_.size());
    if (2 * m_ != static_cast<std::int64_t>(n_) - rsize + sum_d) {
      res.failure = "sanity check";
      return res;
    }
    res.core = std::make_pair(supp + 2 * p2_, rsize);
    return res;
  }

 private:
  std::optional<std::size_t> index(VertexId v) const {
    const auto it = std::lower_bound(r_.begin(), r_.end(), v);
    if (it == r_.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - r_.begin());
  }

  std::uint32_t n_;
  sketch::SparseRecovery sk_;
  std::string failure_;
  std::vector<VertexId> r_;  // sorted (decode yields ordered ids)
  std::vector<std::int64_t> d_;
  std::vector<std::int64_t> l_;
  std::int64_t p2_ = 0;
  std::int64_t m_ = 0;
};

EstimateReport base_report(Parameter p, const char* algorithm, int passes, const ForestConfig& cfg) {
  EstimateReport r;
  r.parameter = p;
  r.algorithm = algorithm;
  r.passes = passes;
  r.factor = claimed_factor(p, passes);
  r.epsilon = cfg.epsilon;
  r.delta = cfg.delta;
  r.seed = cfg.seed;
  return r;
}

void set_interval(EstimateReport& r, double point, double lower, double upper) {
  r.point = point;
  r.lower = std::min(lower, point);
  r.upper = std::max(upper, point);
}

void add_count_details(EstimateReport& r, const ForestCounts& c) {
  r.details.emplace_back("deg1_hat", c.deg1_hat);
  r.details.emplace_back("deg_ge2_hat", c.deg_ge2_hat);
  r.details.emplace_back("supp_hat", c.supp_hat);
  r.details.emplace_back("components", static_cast<double>(c.components));
  r.details.emplace_back("m", static_cast<double>(c.m));
}

void fill_beta_onepass(EstimateReport& r, double n, const ForestCounts& c) {
  const Bounds b = beta_onepass_bounds(n, c.deg1_hat, static_cast<double>(c.components));
  set_interval(r, b.lower, b.lower, b.upper);
}

void fill_gamma_onepass(EstimateReport& r, const ForestCounts& c) {
  const double cc = static_cast<double>(c.components);
  const Bounds b = gamma_onepass_bounds(c.deg_ge2_hat, cc);
  const double raw = (c.deg_ge2_hat + cc) / 3.0;
  // Many P2 components: the raw point drops below the certain lower bound c.
  if (raw < b.lower) r.add_flag("p2_heavy");
  set_interval(r, std::clamp(raw, b.lower, b.upper), b.lower, b.upper);
}

void fill_phi_onepass(EstimateReport& r, const ForestCounts& c) {
  const Bounds b = phi_onepass_bounds(c.deg_ge2_hat, static_cast<double>(c.components));
  set_interval(r, b.lower, b.lower, b.upper);
}

void fill_onepass(EstimateReport& r, Parameter p, std::uint32_t n, const ForestCounts& c) {
  if (p == Parameter::Beta) fill_beta_onepass(r, n, c);
  if (p == Parameter::Gamma) fill_gamma_onepass(r, c);
  if (p == Parameter::Phi) fill_phi_onepass(r, c);
}

ForestEstimate run_onepass(Parameter p, const StreamSequence& stream, const ForestConfig& cfg) {
  check_stream(stream);
  check_accuracy(cfg.epsilon, cfg.delta);
  const std::uint32_t n = stream.n();
  EdgeCounter edges;
  std::optional<LeafCounter> leaves;
  std::optional<NonLeafCounter> nonleaves;
  std::vector<Consumer*> consumers{&edges};
  if (p == Parameter::Beta) {
    leaves.emplace(n, cfg.epsilon, cfg.delta, mix(cfg.seed, kDeg1Salt));
    consumers.push_back(&*leaves);
  } else {
    nonleaves.emplace(n, cfg.epsilon, cfg.delta, mix(cfg.seed, kDeg2Salt));
    consumers.push_back(&*nonleaves);
  }
  drive(stream, 1, consumers);

  ForestEstimate out;
  ForestCounts& c = out.counts;
  c.m = edges.m();
  c.components = static_cast<std::int64_t>(n) - c.m;
  if (leaves) c.deg1_hat = leaves->leaves(c.components);
  if (nonleaves) c.deg_ge2_hat = nonleaves->estimate();

  EstimateReport& r = out.report = make_forest_report(p, 1, n, c, cfg);
  for (Consumer* k : consumers) r.space_bytes += k->space_bytes();
  return out;
}

ForestEstimate run_twopass(Parameter p, const StreamSequence& stream, const ForestConfig& cfg) {
  check_stream(stream);
  check_accuracy(cfg.epsilon, cfg.delta);
  const std::uint32_t n = stream.n();
  const TwoPassParams tp = two_pass_params(p, n, cfg);

  EdgeCounter edges;
  std::optional<LeafCounter> leaves;
  std::optional<NonLeafCounter> nonleaves;
  SuppLargeConfig scfg{tp.k1, tp.c1, tp.epsilon1, mix(cfg.seed, kSuppSalt), cfg.support_sample};
  SupportSampler support(n, scfg);
  SmallCoreRecovery core(n, tp.k2, tp.c2, mix(cfg.seed, kCoreSalt));
  std::vector<Consumer*> consumers{&edges, &support, &core};
  if (p == Parameter::Beta) {
    leaves.emplace(n, tp.count_epsilon, tp.count_delta, mix(cfg.seed, kDeg1Salt));
    consumers.push_back(&*leaves);
  } else {
    nonleaves.emplace(n, tp.count_epsilon, tp.count_delta, mix(cfg.seed, kDeg2Salt));
    consumers.push_back(&*nonleaves);
  }
  drive(stream, 2, consumers);

  ForestEstimate out;
  ForestCounts& c = out.counts;
  c.m = edges.m();
  c.components = static_cast<std::int64_t>(n) - c.m;
  if (leaves) c.deg1_hat = leaves->leaves(c.components);
  if (nonleaves) c.deg_ge2_hat = nonleaves->estimate();
  const SuppLargeResult sr = support.result();
  const SmallCoreResult cr = core.result();
  c.support_aborted = sr.aborted;
  c.supp_hat = sr.estimate;
  c.exact_small = cr.core;

  EstimateReport& r = out.report = make_forest_report(p, 2, n, c, cfg);
  for (Consumer* k : consumers) r.space_bytes += k->space_bytes();
  r.details.emplace_back("support_sample", static_cast<double>(sr.sample_size));
  r.details.emplace_back("k1", tp.k1);
  r.details.emplace_back("k2", tp.k2);
  if (cr.core) {
    r.details.emplace_back("exact_supp", static_cast<double>(cr.core->first));
    r.details.emplace_back("exact_deg_ge2", static_cast<double>(cr.core->second));
  }
  return out;
}

}  // namespace

double estimate_deg_ge2(const StreamSequence& stream, double epsilon, double delta, std::uint64_t seed) {
  check_stream(stream);
  check_accuracy(epsilon, delta);
  NonLeafCounter k(stream.n(), epsilon, delta, seed);
  drive(stream, 1, {&k});
  return k.estimate();
}

double estimate_deg1(const StreamSequence& stream, double epsilon, double delta, std::uint64_t seed) {
  check_stream(stream);
  check_accuracy(epsilon, delta);
  EdgeCounter edges;
  LeafCounter k(stream.n(), epsilon, delta, seed);
  drive(stream, 1, {&edges, &k});
  return k.leaves(static_cast<std::int64_t>(stream.n()) - edges.m());
}

std::size_t supp_sample_size(std::uint32_t n, const SuppLargeConfig& cfg) {
  if (!(cfg.k1 > 0 && cfg.c1 > 0 && cfg.epsilon1 > 0))
    throw Error(ErrorKind::InvalidArgument, "K1, c1 and epsilon1 must be positive");
  const double want = std::ceil(cfg.c1 * n / (cfg.epsilon1 * cfg.epsilon1 * cfg.k1));
  return static_cast<std::size_t>(std::min<double>(n, want));
}

SuppLargeResult estimate_supp_large(const StreamSequence& stream, const SuppLargeConfig& cfg) {
  check_stream(stream);
  SupportSampler k(stream.n(), cfg);
  drive(stream, 2, {&k});
  return k.result();
}

SmallCoreResult recover_small_core(const StreamSequence& stream, double k2, double c2, std::uint64_t seed) {
  check_stream(stream);
  if (!(k2 > 0 && c2 > 1)) throw Error(ErrorKind::InvalidArgument, "need K2 > 0 and c2 > 1");
  SmallCoreRecovery k(stream.n(), k2, c2, seed);
  drive(stream, 2, {&k});
  return k.result();
}

ForestEstimate estimate_beta_onepass(const StreamSequence& s, const ForestConfig& c) {
  return run_onepass(Parameter::Beta, s, c);
}
ForestEstimate estimate_gamma_onepass(const StreamSequence& s, const ForestConfig& c) {
  return run_onepass(Parameter::Gamma, s, c);
}
ForestEstimate estimate_phi_onepass(const StreamSequence& s, const ForestConfig& c) {
  return run_onepass(Parameter::Phi, s, c);
}
ForestEstimate estimate_beta_twopass(const StreamSequence& s, const ForestConfig& c) {
  return run_twopass(Parameter::Beta, s, c);
}
ForestEstimate estimate_gamma_twopass(const StreamSequence& s, const ForestConfig& c) {
  return run_twopass(Parameter::Gamma, s, c);
}
ForestEstimate estimate_phi_twopass(const StreamSequence& s, const ForestConfig& c) {
  return run_twopass(Parameter::Phi, s, c);
}

double claimed_factor(Parameter p, int passes) {
  switch (p) {
    case Parameter::Beta: return passes == 1 ? 1.5 : 4.0 / 3.0;
    case Parameter::Gamma: return passes == 1 ? 3.0 : 2.0;
    case Parameter::Phi: return passes == 1 ? 2.0 : 1.5;
    case Parameter::Lambda: return 1.0;
  }
  return 1.0;
}

EstimateReport make_forest_report(Parameter p, int passes, std::uint32_t n, const ForestCounts& c,
                                  const ForestConfig& cfg) {
  if (p == Parameter::Lambda) throw Error(ErrorKind::InvalidArgument, "lambda is not a forest parameter");
  static constexpr const char* kNames[2][3] = {{"beta-1p", "gamma-1p", "phi-1p"},
                                               {"beta-2p", "gamma-2p", "phi-2p"}};
  EstimateReport r = base_report(p, kNames[passes == 2][static_cast<int>(p)], passes, cfg);
  const double eps = cfg.epsilon;
  const double cc = static_cast<double>(c.components);
  if (passes == 1) {
    fill_onepass(r, p, n, c);
  } else {
    if (c.support_aborted) r.add_flag("support_aborted");
    if (!c.exact_small) r.add_flag("core_failed");
    if (c.exact_small) {
      // Every count is exact; the interval is the structural one.
      r.add_flag("exact_counts");
      const double s = static_cast<double>(c.exact_small->first);
      const double h = static_cast<double>(c.exact_small->second);
      if (p == Parameter::Beta) {
        const double point = beta_twopass_point(n, n - h, s);
        set_interval(r, point, point, std::min<double>(n, 4.0 / 3.0 * point));
      } else if (p == Parameter::Gamma) {
        const double point = gamma_twopass_point(h, s);
        set_interval(r, point, point / 2.0, point);
      } else {
        const double point = phi_twopass_point(h, cc, s);
        set_interval(r, point, 2.0 * point / 3.0, point);
      }
    } else if (!c.support_aborted) {
      const double s = c.supp_hat;
      if (p == Parameter::Beta) {
        const double point = beta_twopass_point(n, c.deg1_hat, s);
        set_interval(r, point, point / (1 + eps), std::min<double>(n, 4.0 / 3.0 * (1 + eps) * point));
      } else if (p == Parameter::Gamma) {
        const double point = gamma_twopass_point(c.deg_ge2_hat, s);
        set_interval(r, point, point / (2 * (1 + eps)), point / (1 - eps));
      } else {
        const double point = phi_twopass_point(c.deg_ge2_hat, cc, s);
        set_interval(r, point, point / (1.5 * (1 + eps)), point / (1 - eps));
      }
    } else {
      // Both support branches failed: only the one-pass interval is left.
      r.add_flag("degraded");
      r.factor = claimed_factor(p, 1);
      fill_onepass(r, p, n, c);
    }
  }
  add_count_details(r, c);
  return r;
}

Bounds beta_onepass_bounds(double n, double deg1, double c) {
  const double lower = std::max(n / 2.0, deg1 - c);
  return {lower, std::max(lower, (n + deg1) / 2.0)};
}

Bounds gamma_onepass_bounds(double deg_ge2, double c) {
  return {std::max(deg_ge2 / 3.0, c), deg_ge2 + c};
}

Bounds phi_onepass_bounds(double deg_ge2, double c) {
  return {std::max(c, (deg_ge2 + c) / 2.0), deg_ge2 + c};
}

double beta_twopass_point(double n, double deg1, double supp) {
  return std::min(3.0 * (n + deg1) / 8.0, (n + deg1 - supp) / 2.0);
}

double gamma_twopass_point(double deg_ge2, double supp) {
  return std::max(2.0 * deg_ge2 / 3.0, (deg_ge2 + supp) / 2.0);
}

double phi_twopass_point(double deg_ge2, double c, double supp) {
  return std::max(3.0 * (deg_ge2 + c) / 4.0, (deg_ge2 + supp) / 2.0);
}

TwoPassParams two_pass_params(Parameter p, std::uint32_t n, const ForestConfig& cfg) {
  check_accuracy(cfg.epsilon, cfg.delta);
  if (p == Parameter::Lambda) throw Error(ErrorKind::InvalidArgument, "no two-pass lambda estimator");
  const double root = std::sqrt(static_cast<double>(n));
  TwoPassParams tp;
  tp.k1 = cfg.k1.value_or(root);
  tp.k2 = cfg.k2.value_or((p == Parameter::Gamma ? 12.0 : 8.0) * root);
  tp.c1 = cfg.c1.value_or(3.0 * std::log(6.0 / cfg.delta));
  tp.c2 = cfg.c2.value_or(1.0 / cfg.delta);
  tp.epsilon1 = cfg.epsilon1.value_or(p == Parameter::Beta ? cfg.epsilon / 2.0 : cfg.epsilon);
  tp.count_epsilon = p == Parameter::Beta ? cfg.epsilon / 2.0 : cfg.epsilon;
  tp.count_delta = cfg.delta / 2.0;
  return tp;
}

}  // namespace sparsestream
