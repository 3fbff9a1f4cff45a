#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "sparsestream/hash.hpp"
#include "sparsestream/report.hpp"
#include "sparsestream/stream.hpp"

namespace sparsestream {

enum class SampleMode : std::uint8_t { WithoutReplacement, Bernoulli };

struct CwConfig {
  double epsilon = 0.2;
  double avg_degree_bound = 1.0;  // d̄, supplied by the caller
  std::uint64_t seed = 0;
  SampleMode sample_mode = SampleMode::WithoutReplacement;
  double abort_factor = 10.0;
  /// Replaces 4(d̄+1)/(ε²n); still clamped to 1.
  std::optional<double> p_override;
  unsigned c_h = MinWiseHash::kDefaultIndependence;
};

/// min(1, 4(d̄+1)/(ε²n)).
double cw_sampling_probability(const CwConfig& cfg, std::uint32_t n);

/// Total order on vertices used as the random permutation: by rank, ties
/// towards the smaller id. Either an ε-min-wise hash or explicit positions.
class Ranker {
 public:
  static Ranker from_hash(MinWiseHash hash);
  /// position[v] for v in 1..n; index 0 unused.
  static Ranker from_positions(std::vector<std::uint32_t> position);

  std::uint64_t rank(VertexId v) const;
  bool before(VertexId a, VertexId b) const {
    const auto ra = rank(a), rb = rank(b);
    return ra < rb || (ra == rb && a < b);
  }
  std::size_t space_bytes() const;

 private:
  std::shared_ptr<const MinWiseHash> hash_;
  std::shared_ptr<const std::vector<std::uint32_t>> position_;
};

struct CwResult {
  double estimate = 0;
  double p = 1;
  std::size_t sample_size = 0;
  std::size_t retained = 0;
  bool exact_sampling = false;
  std::size_t space_bytes = 0;
  // cw_unbounded only
  std::size_t instances = 0;
  std::size_t aborted = 0;
  std::vector<VertexId> heavy;
};

/// Uniform sample of the vertex set under cfg.sample_mode, sorted.
std::vector<VertexId> cw_sample(std::uint32_t n, double p, SampleMode mode, std::uint64_t seed);

/// Sampled vertices survive while no observed neighbour precedes them;
/// returns |S|/p. Insertion-only edge-arrival streams.
CwResult cw_base(const StreamSequence& stream, const CwConfig& cfg, const Ranker* ranker = nullptr);

/// Write-only solution bits after the stream; bits only go true -> false.
struct CwSolution {
  std::vector<bool> bits;  // index 0 unused
  std::size_t size() const;
  std::size_t space_bytes = 0;  // working space (the hash), not the solution
};

/// Called after every update with the solution so far.
using CwObserver = std::function<void(std::size_t index, const StreamUpdate& update, const std::vector<bool>& bits)>;

CwSolution cw_online(const StreamSequence& stream, double epsilon, std::uint64_t seed,
                     const CwObserver& observer = {}, const Ranker* ranker = nullptr);

/// One pass feeding a Count-Min heavy-hitter sketch and ⌈c'·log2 n⌉
/// neighbour-list instances. Heavy vertices R are removed from every list
/// and from the samples in post-processing; the result is the maximum
/// surviving |S|/p. With `heavy` given the sketch is skipped and R is
/// ignored during the pass (the two-pass variant's second pass).
CwResult cw_unbounded(const StreamSequence& stream, const CwConfig& cfg, double c_prime,
                      std::optional<std::vector<VertexId>> heavy = std::nullopt);

/// Two passes: the first finds R with the heavy-hitter sketch, the second
/// runs the instances with R known.
CwResult cw_unbounded_two_pass(const StreamSequence& stream, const CwConfig& cfg, double c_prime);

/// Heavy-hitter thresholds ψ = τ = ε²/(6(d̄+1)^4).
double cw_heavy_threshold(const CwConfig& cfg);

/// Random-order vertex arrival: counts arrivals with no earlier neighbour,
/// each with probability p; returns c/p. Throws CounterOverflowAbort if
/// c exceeds abort_factor·p·n.
CwResult cw_vertex_random(const StreamSequence& stream, const CwConfig& cfg);

enum class BoostMode : std::uint8_t { Median, Max };

/// Lower median or maximum. Throws EmptyInput.
double boost(std::span<const double> estimates, BoostMode mode);
/// ⌈c_b · ln(1/δ)⌉, at least 1.
std::uint32_t boost_trials(double delta, double c_b = 6.0);

/// Lambda report: certified interval [λ̂/(1+3ε), λ̂/(1-3ε)] clipped to [0, n].
EstimateReport make_lambda_report(const CwResult& result, const CwConfig& cfg, std::uint32_t n,
                                  std::string algorithm, int passes);

}  // namespace sparsestream
