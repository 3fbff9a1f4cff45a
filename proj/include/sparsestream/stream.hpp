#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sparsestream/error.hpp"

namespace sparsestream {

using VertexId = std::uint32_t;
using Rational = boost::multiprecision::cpp_rational;

enum class UpdateKind : std::uint8_t { EdgeInsert, EdgeDelete, VertexArrival };
enum class StreamModel : std::uint8_t { EdgeArrival, VertexArrival };

/// Provenance of the update order. Only generated streams can vouch for a
/// uniformly random order; parsed streams are Unknown.
enum class StreamOrder : std::uint8_t { Unknown, Arbitrary, Random };

const char* to_string(StreamModel model);
const char* to_string(StreamOrder order);

/// Undirected edge, normalised so that u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  Edge() = default;
  Edge(VertexId a, VertexId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  std::uint64_t key() const noexcept {
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct StreamUpdate {
  UpdateKind kind = UpdateKind::EdgeInsert;
  VertexId u = 0;
  VertexId v = 0;                    // edge events only
  std::vector<VertexId> neighbors;   // vertex arrival only: earlier arrivals

  static StreamUpdate insert(VertexId a, VertexId b) {
    return {UpdateKind::EdgeInsert, a, b, {}};
  }
  static StreamUpdate erase(VertexId a, VertexId b) {
    return {UpdateKind::EdgeDelete, a, b, {}};
  }
  static StreamUpdate arrival(VertexId id, std::vector<VertexId> prior) {
    return {UpdateKind::VertexArrival, id, 0, std::move(prior)};
  }

  bool is_edge() const noexcept { return kind != UpdateKind::VertexArrival; }
  /// +1 for insertions and arrivals, -1 for deletions.
  int sign() const noexcept { return kind == UpdateKind::EdgeDelete ? -1 : 1; }

  friend bool operator==(const StreamUpdate&, const StreamUpdate&) = default;
};

/// Immutable, validated graph stream. Construct through StreamBuilder,
/// parse_stream() or the generators.
class StreamSequence {
 public:
  std::uint32_t n() const noexcept { return n_; }
  StreamModel model() const noexcept { return model_; }
  StreamOrder order() const noexcept { return order_; }
  const std::vector<StreamUpdate>& updates() const noexcept { return updates_; }
  std::size_t size() const noexcept { return updates_.size(); }
  std::size_t deletion_count() const noexcept { return deletion_count_; }
  bool insertion_only() const noexcept { return deletion_count_ == 0; }

  /// Edges present at the end of the stream, sorted.
  const std::vector<Edge>& final_edges() const noexcept { return final_edges_; }
  bool has_isolated_vertices() const noexcept { return has_isolated_; }

  friend bool operator==(const StreamSequence& a, const StreamSequence& b) {
    return a.n_ == b.n_ && a.model_ == b.model_ && a.updates_ == b.updates_;
  }

 private:
  friend class StreamBuilder;
  StreamSequence() = default;

  std::uint32_t n_ = 0;
  StreamModel model_ = StreamModel::EdgeArrival;
  StreamOrder order_ = StreamOrder::Unknown;
  std::vector<StreamUpdate> updates_;
  std::size_t deletion_count_ = 0;
  std::vector<Edge> final_edges_;
  bool has_isolated_ = false;
};

/// Incremental validator for stream events. Every update is checked against
/// the turnstile, id-range and arrival-order rules as it is appended.
class StreamBuilder {
 public:
  /// Deletions are capped at `deletion_factor * n`.
  StreamBuilder(std::uint32_t n, StreamModel model, double deletion_factor = 4.0);

  void set_order(StreamOrder order) { order_ = order; }
  void push(StreamUpdate update);
  StreamSequence build() &&;

 private:
  void check_id(VertexId id) const;

  std::uint32_t n_;
  StreamModel model_;
  StreamOrder order_ = StreamOrder::Unknown;
  std::size_t max_deletions_;
  std::vector<StreamUpdate> updates_;
  std::unordered_set<std::uint64_t> present_;
  std::vector<bool> arrived_;
  std::size_t deletions_ = 0;
};

/// Parses the line-oriented text format:
///   # n=<N> model=edge|vertex
///   + u v          edge insertion
///   - u v          edge deletion
///   v id : a,b,c   vertex arrival with earlier-arrived neighbours
StreamSequence parse_stream(std::string_view text, double deletion_factor = 4.0);
std::string serialize_stream(const StreamSequence& stream);

struct EdgeCounters {
  std::int64_t m = 0;  // final edge count
  std::int64_t c = 0;  // n - m: the component count of a forest without isolated vertices
};

/// Single exact signed counter over the stream.
EdgeCounters exact_counters(const StreamSequence& stream);

/// What a replay consumer returns after each update.
struct ReplayControl {
  bool abort = false;
  std::string reason;

  static ReplayControl proceed() { return {}; }
  static ReplayControl stop(std::string why) { return {true, std::move(why)}; }
};

/// Feeds every update to `consumer(update, pass)` for `passes` passes in
/// identical order. A consumer returning ReplayControl::stop ends the replay
/// with ReplayAborted. Returns the number of deliveries.
template <class Consumer>
std::size_t replay(const StreamSequence& stream, int passes, Consumer&& consumer) {
  if (passes < 1) throw Error(ErrorKind::InvalidArgument, "replay needs passes >= 1");
  std::size_t delivered = 0;
  for (int pass = 0; pass < passes; ++pass) {
    for (const StreamUpdate& u : stream.updates()) {
      ++delivered;
      ReplayControl ctl = consumer(u, pass);
      if (ctl.abort) throw ReplayAborted(std::move(ctl.reason), pass, delivered);
    }
  }
  return delivered;
}

/// Exact structural quantities of the final graph. Forest-only fields are
/// empty for graphs with cycles.
struct GroundTruth {
  std::uint32_t n = 0;
  std::int64_t m = 0;
  Rational lambda;
  Rational avg_degree;
  std::uint32_t max_degree = 0;
  std::int64_t components = 0;
  std::int64_t isolated = 0;
  std::int64_t deg1 = 0;
  std::int64_t deg_ge2 = 0;
  std::int64_t supp = 0;
  bool is_forest = false;
  std::optional<std::int64_t> beta;
  std::optional<std::int64_t> gamma;
  std::optional<std::int64_t> phi;

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

std::string to_json(const GroundTruth& truth);

}  // namespace sparsestream
