#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sparsestream::sketch {

/// Turnstile distinct-count (‖x‖₀) sketch.
///
/// Each repetition keeps ⌈log2 n⌉+1 nested subsampling levels; coordinate i
/// belongs to levels 0..lvl(i) with Pr[lvl(i) >= j] = 2^-j. Every level has B
/// buckets holding Σ x_i·r(i) mod 2^61-1, so a bucket is nonzero iff (up to a
/// 2^-61 fingerprint collision) a nonzero coordinate hashes there. The
/// estimate inverts bucket occupancy at the shallowest level with at most B/2
/// occupied buckets; the median over repetitions is reported.
class L0Sketch {
 public:
  L0Sketch(std::uint32_t n, double epsilon, double delta, std::uint64_t seed);

  void update(std::uint32_t i, std::int64_t delta);
  /// Adds `offset` to every coordinate (n updates).
  void apply_uniform_offset(std::int64_t offset);
  double estimate() const;

  L0Sketch& operator+=(const L0Sketch& other);
  friend bool operator==(const L0Sketch&, const L0Sketch&) = default;

  std::uint32_t n() const noexcept { return n_; }
  double epsilon() const noexcept { return epsilon_; }
  double delta() const noexcept { return delta_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint32_t repetitions() const noexcept { return reps_; }
  std::uint32_t levels() const noexcept { return levels_; }
  std::uint32_t buckets() const noexcept { return buckets_; }
  std::size_t space_bytes() const noexcept { return cells_.size() * sizeof(std::uint64_t); }

  std::string serialize() const;
  static L0Sketch deserialize(std::string_view bytes);

 private:
  L0Sketch() = default;
  std::uint64_t& cell(std::uint32_t rep, std::uint32_t level, std::uint32_t bucket) {
    return cells_[(std::size_t{rep} * levels_ + level) * buckets_ + bucket];
  }
  double estimate_rep(std::uint32_t rep) const;

  std::uint32_t n_ = 0;
  double epsilon_ = 0;
  double delta_ = 0;
  std::uint64_t seed_ = 0;
  std::uint32_t reps_ = 0;
  std::uint32_t levels_ = 0;
  std::uint32_t buckets_ = 0;
  std::vector<std::uint64_t> cells_;
};

}  // namespace sparsestream::sketch
