#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sparsestream {

enum class Parameter : std::uint8_t { Beta, Gamma, Phi, Lambda };

const char* to_string(Parameter p);

/// Output of every estimator. lower <= point <= upper always holds; the
/// interval is what the estimator certifies given its (ε, δ) guarantee.
struct EstimateReport {
  Parameter parameter = Parameter::Lambda;
  std::string algorithm;
  double point = 0;
  double lower = 0;
  double upper = 0;
  double factor = 1;
  double epsilon = 0;
  double delta = 0;
  int passes = 1;
  std::vector<std::string> flags;
  std::uint64_t seed = 0;
  std::size_t space_bytes = 0;
  double wall_ms = 0;
  /// Named intermediate quantities (estimated counts, sample sizes, ...).
  std::vector<std::pair<std::string, double>> details;

  bool has_flag(const std::string& f) const;
  void add_flag(std::string f);
  /// Statistical failure surfaced to callers (CLI exit code 2).
  bool degraded() const { return has_flag("degraded"); }
};

std::string to_json(const EstimateReport& report);

}  // namespace sparsestream
