#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparsestream/report.hpp"
#include "sparsestream/stream.hpp"

namespace sparsestream {

/// Counts the forest estimators are built from. components and m are exact;
/// the hatted fields are estimates (zero when the estimator did not need
/// them).
struct ForestCounts {
  double deg1_hat = 0;
  double deg_ge2_hat = 0;
  double supp_hat = 0;
  std::int64_t components = 0;
  std::int64_t m = 0;
  bool support_aborted = false;
  /// (supp, deg_ge2), present only when small-core recovery succeeded.
  std::optional<std::pair<std::int64_t, std::int64_t>> exact_small;
};

struct ForestEstimate {
  EstimateReport report;
  ForestCounts counts;
};

struct ForestConfig {
  double epsilon = 0.2;
  double delta = 0.1;
  std::uint64_t seed = 0;
  // Two-pass overrides; unset means the defaults of the chosen estimator.
  std::optional<double> k1;
  std::optional<double> k2;
  std::optional<double> c1;
  std::optional<double> c2;
  std::optional<double> epsilon1;
  /// Replaces the random support sample (ids in 1..n).
  std::optional<std::vector<VertexId>> support_sample;
};

// Single-purpose estimators. All take turnstile forests without isolated
// vertices; vertex-arrival streams are read as edge insertions.

/// |Deg≥2|: L0 norm of the degree vector shifted by -1.
double estimate_deg_ge2(const StreamSequence& stream, double epsilon, double delta, std::uint64_t seed);
/// |Deg1| = ‖D - 2‖₁/2 + c, the L1 norm taken from a sketch and c exact.
double estimate_deg1(const StreamSequence& stream, double epsilon, double delta, std::uint64_t seed);

struct SuppLargeConfig {
  double k1 = 1;
  double c1 = 1;
  double epsilon1 = 0.5;
  std::uint64_t seed = 0;
  std::optional<std::vector<VertexId>> sample;
};

struct SuppLargeResult {
  bool aborted = false;
  double estimate = 0;
  std::size_t sample_size = 0;
  std::size_t supported = 0;  // |C|
  std::size_t peak_entries = 0;
  std::size_t space_bytes = 0;
};

/// Sample size min(n, ⌈c1·n/(ε1²·K1)⌉).
std::size_t supp_sample_size(std::uint32_t n, const SuppLargeConfig& cfg);

/// Two passes. Pass one keeps the neighbour set of each sampled vertex and
/// aborts once the stored entries reach (2m/n)·|I|·e^(c1/3), m being the
/// running edge count; pass two counts the degrees of all stored
/// neighbours. Returns |C|·n/|I| for C the sampled vertices with a leaf
/// neighbour.
SuppLargeResult estimate_supp_large(const StreamSequence& stream, const SuppLargeConfig& cfg);

struct SmallCoreResult {
  std::optional<std::pair<std::int64_t, std::int64_t>> core;  // (supp, deg_ge2)
  std::string failure;  // empty on success
  std::size_t space_bytes = 0;
};

/// Two passes. Pass one recovers R = Deg≥2 from a k-sparse sketch of the
/// degree vector shifted by -1 (k = ⌈K2⌉, failure budget 1/c2); pass two
/// counts, for v ∈ R, d_v and the neighbours outside R, plus the edges
/// avoiding R. Fails on decode failure or when 2m ≠ n - |R| + Σ d_v.
SmallCoreResult recover_small_core(const StreamSequence& stream, double k2, double c2, std::uint64_t seed);

ForestEstimate estimate_beta_onepass(const StreamSequence& stream, const ForestConfig& cfg);
ForestEstimate estimate_gamma_onepass(const StreamSequence& stream, const ForestConfig& cfg);
ForestEstimate estimate_phi_onepass(const StreamSequence& stream, const ForestConfig& cfg);
ForestEstimate estimate_beta_twopass(const StreamSequence& stream, const ForestConfig& cfg);
ForestEstimate estimate_gamma_twopass(const StreamSequence& stream, const ForestConfig& cfg);
ForestEstimate estimate_phi_twopass(const StreamSequence& stream, const ForestConfig& cfg);

/// Report from counts alone: the one-pass interval, or for two passes the
/// exact branch when exact_small is set, the estimated branch otherwise, and
/// a degraded one-pass interval when the support estimate also aborted.
/// space_bytes is left at zero.
EstimateReport make_forest_report(Parameter p, int passes, std::uint32_t n, const ForestCounts& counts,
                                  const ForestConfig& cfg);

/// Claimed approximation factor per (parameter, passes).
double claimed_factor(Parameter p, int passes);

// Pure formulas, shared by the estimators and the exhaustive checks.

struct Bounds {
  double lower = 0;
  double upper = 0;
};

/// [max(n/2, deg1 - c), (n + deg1)/2].
Bounds beta_onepass_bounds(double n, double deg1, double c);
/// [max(deg_ge2/3, c), deg_ge2 + c].
Bounds gamma_onepass_bounds(double deg_ge2, double c);
/// [max(c, (deg_ge2 + c)/2), deg_ge2 + c].
Bounds phi_onepass_bounds(double deg_ge2, double c);

/// min(3(n + deg1)/8, (n + deg1 - supp)/2).
double beta_twopass_point(double n, double deg1, double supp);
/// max(2·deg_ge2/3, (deg_ge2 + supp)/2).
double gamma_twopass_point(double deg_ge2, double supp);
/// max(3(deg_ge2 + c)/4, (deg_ge2 + supp)/2).
double phi_twopass_point(double deg_ge2, double c, double supp);

/// Resolved two-pass constants for a parameter.
struct TwoPassParams {
  double k1 = 0;
  double k2 = 0;
  double c1 = 0;
  double c2 = 0;
  double epsilon1 = 0;
  double count_epsilon = 0;  // the Deg1 or Deg≥2 sketch
  double count_delta = 0;
};

TwoPassParams two_pass_params(Parameter p, std::uint32_t n, const ForestConfig& cfg);

}  // namespace sparsestream
