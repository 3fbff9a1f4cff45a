#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sparsestream::sketch {

/// Hierarchical Count-Min heavy hitters over [1, n] with nonnegative
/// frequencies at query time.
///
/// Level ℓ counts dyadic prefixes (i-1) >> ℓ; each level is a depth × width
/// Count-Min table with width ⌈e/ψ⌉ and depth ⌈ln(2L/(δτ))⌉. A query walks
/// down from the root keeping prefixes whose estimate reaches (ψ+τ)·‖x‖₁.
/// Count-Min never underestimates nonnegative vectors, so every item at or
/// above the threshold is reported.
class CountMinHH {
 public:
  CountMinHH(std::uint32_t n, double psi, double tau, double delta, std::uint64_t seed);

  void update(std::uint32_t i, std::int64_t delta);
  /// Point estimate of x_i.
  std::int64_t estimate(std::uint32_t i) const;
  /// Items with estimated frequency >= (ψ+τ)·‖x‖₁, ascending by id.
  std::vector<std::pair<std::uint32_t, std::int64_t>> heavy_hitters() const;

  CountMinHH& operator+=(const CountMinHH& other);
  friend bool operator==(const CountMinHH&, const CountMinHH&) = default;

  std::int64_t total() const noexcept { return total_; }
  std::uint32_t levels() const noexcept { return levels_; }
  std::uint32_t width() const noexcept { return width_; }
  std::uint32_t depth() const noexcept { return depth_; }
  double psi() const noexcept { return psi_; }
  double tau() const noexcept { return tau_; }
  std::size_t space_bytes() const noexcept { return (table_.size() + 1) * sizeof(std::uint64_t); }

  std::string serialize() const;
  static CountMinHH deserialize(std::string_view bytes);

 private:
  CountMinHH() = default;
  std::size_t slot(std::uint32_t level, std::uint32_t row, std::uint64_t prefix) const;
  std::int64_t prefix_estimate(std::uint32_t level, std::uint64_t prefix) const;

  std::uint32_t n_ = 0;
  double psi_ = 0;
  double tau_ = 0;
  double delta_ = 0;
  std::uint64_t seed_ = 0;
  std::uint32_t levels_ = 0;
  std::uint32_t width_ = 0;
  std::uint32_t depth_ = 0;
  std::int64_t total_ = 0;
  std::vector<std::uint64_t> table_;  // wrapping counters
};

}  // namespace sparsestream::sketch
