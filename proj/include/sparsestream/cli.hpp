#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sparsestream/error.hpp"
#include "sparsestream/generators.hpp"
#include "sparsestream/report.hpp"
#include "sparsestream/stream.hpp"

namespace sparsestream::cli {

enum class Algorithm : std::uint8_t {
  CwBase,
  CwOnline,
  CwUnbounded,
  CwVertex,
  Beta1p,
  Beta2p,
  Gamma1p,
  Gamma2p,
  Phi1p,
  Phi2p,
};

const char* to_string(Algorithm a);
/// Accepts cw-base, cw-online, cw-unbounded, cw-vertex, beta-1p, ... phi-2p.
/// Throws InvalidArgument.
Algorithm parse_algorithm(std::string_view name);
Parameter parameter_of(Algorithm a);
int passes_of(Algorithm a);

struct EstimateOptions {
  double epsilon = 0.2;
  double delta = 0.1;
  std::uint64_t seed = 0;
  /// d̄ for the Caro-Wei estimators; unset means the stream's exact 2m/n.
  std::optional<double> avg_degree;
  double c_prime = 1.0;
  bool timing = false;
};

/// Runs one estimator. Statistical aborts surface as Error with kind
/// AllInstancesAborted or CounterOverflowAbort.
EstimateReport run_estimator(Algorithm a, const StreamSequence& stream, const EstimateOptions& opt);

/// Generator settings shared by gen and eval. Besides the forest
/// shapes, "random-graph" draws a sparse graph and "all-trees" (eval only)
/// walks every labeled tree on n vertices.
struct GenSpec {
  std::string shape = "random-tree";
  std::uint32_t n = 0;
  std::uint32_t r = 0;
  StreamOrder order = StreamOrder::Arbitrary;
  StreamModel model = StreamModel::EdgeArrival;
  double deletion_rate = 0.0;
  std::uint64_t seed = 0;
  double avg_degree = 2.0;
  std::uint32_t max_degree = 0;  // 0: no cap
};

Generated generate(const GenSpec& spec);

/// The oracle value an algorithm is judged against. Throws NotAForest for
/// forest algorithms on graphs with cycles.
double truth_for(Algorithm a, const GroundTruth& truth);

/// Whether a report meets its guarantee against the true value:
///   Caro-Wei:  |point - λ| <= 3ελ
///   one-pass:  truth in [(1-ε)·lower, (1+ε)·upper]
///   beta-2p:   point/(1+ε) <= β <= (4/3)(1+ε)·point
///   gamma-2p:  γ <= point/(1-ε) and point <= 2(1+ε)·γ
///   phi-2p:    φ <= point/(1-ε) and point <= (3/2)(1+ε)·φ
/// Degraded reports never succeed.
bool trial_success(Algorithm a, const EstimateReport& report, double truth);

/// max(point/truth, truth/point); 1 when both are zero.
double trial_ratio(double point, double truth);

struct TrialRow {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  double truth = 0;
  double estimate = 0;
  double lower = 0;
  double upper = 0;
  double ratio = 0;
  bool success = false;
  std::string status;  // "ok", "degraded" or an abort kind
  std::size_t space_bytes = 0;
  double wall_ms = 0;
};

struct EvalSummary {
  std::size_t trials = 0;
  double success_rate = 0;
  double mean_ratio = 0;
  double max_ratio = 0;
  double wall_ms = 0;
  std::size_t peak_space_bytes = 0;
};

struct EvalResult {
  std::vector<TrialRow> rows;
  EvalSummary summary;
};

struct EvalConfig {
  Algorithm algorithm = Algorithm::CwBase;
  GenSpec gen;
  EstimateOptions estimate;
  std::uint64_t trials = 30;
  /// Worker cap; 0 reads SPARSESTREAM_THREADS, then the hardware count.
  unsigned threads = 0;
};

/// Trial t uses seed mix(seed, t) for both generation and estimation.
/// Rows are ordered by trial index whatever the thread count. With the
/// "all-trees" shape every tree on n vertices is one trial and the forest
/// estimators are fed exact counts.
EvalResult run_eval(const EvalConfig& cfg);

inline constexpr std::string_view kEvalSchema = "sparsestream.eval/1";
void write_eval_csv(std::ostream& out, const EvalResult& result);

/// 0 success, 1 input error, 2 statistical abort or degraded result.
int exit_code_for(ErrorKind kind);

/// Entry point behind the sparsestream binary.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace sparsestream::cli
