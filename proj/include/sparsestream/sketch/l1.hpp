#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sparsestream::sketch {

/// Turnstile ‖x‖₁ sketch from R Cauchy (1-stable) projections.
///
/// Row r accumulates Σ x_i·C_r(i) with C_r(i) a seeded Cauchy variate,
/// clamped to ±2^24 and quantised to 2^-16. Accumulators are wrapping 64-bit
/// integers, so updates commute and merges are exact. Since |Cauchy| has
/// median 1, median_r |acc_r| estimates ‖x‖₁.
class L1Sketch {
 public:
  static constexpr double kDefaultRowConstant = 4.0;

  /// R = ⌈row_constant · ln(2/δ) / ε²⌉, rounded up to an odd number.
  L1Sketch(std::uint32_t n, double epsilon, double delta, std::uint64_t seed,
           double row_constant = kDefaultRowConstant);

  void update(std::uint32_t i, std::int64_t delta);
  /// Adds `offset` to every coordinate through the all-ones projection,
  /// computed once in O(nR) time and cached.
  void apply_uniform_offset(std::int64_t offset);
  double estimate() const;

  L1Sketch& operator+=(const L1Sketch& other);
  /// Compares parameters and accumulators; the offset cache is ignored.
  friend bool operator==(const L1Sketch& a, const L1Sketch& b) {
    return a.n_ == b.n_ && a.seed_ == b.seed_ && a.epsilon_ == b.epsilon_ && a.delta_ == b.delta_ &&
           a.acc_ == b.acc_;
  }

  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t rows() const noexcept { return static_cast<std::uint32_t>(acc_.size()); }
  std::uint64_t seed() const noexcept { return seed_; }
  /// Accumulators plus the all-ones cache once it exists.
  std::size_t space_bytes() const noexcept {
    return (acc_.size() + (ones_ ? ones_->size() : 0)) * sizeof(std::uint64_t);
  }

  std::string serialize() const;
  static L1Sketch deserialize(std::string_view bytes);

  /// The quantised projection coefficient C_r(i) · 2^16.
  std::int64_t coefficient(std::uint32_t row, std::uint32_t i) const;

 private:
  L1Sketch() = default;

  std::uint32_t n_ = 0;
  double epsilon_ = 0;
  double delta_ = 0;
  double row_constant_ = kDefaultRowConstant;
  std::uint64_t seed_ = 0;
  std::vector<std::uint64_t> acc_;
  std::optional<std::vector<std::uint64_t>> ones_;
};

}  // namespace sparsestream::sketch
