#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sparsestream::sketch {

/// Exact k-sparse recovery: an invertible Bloom lookup table over a
/// turnstile vector.
///
/// `rows` tables of 2k buckets; coordinate i lands in one bucket per row.
/// A cell holds (Σx, Σx·i, Σx·z^i mod 2^61-1). A cell is pure when it
/// describes a single coordinate, which the fingerprint certifies; peeling
/// pure cells either empties the table (exact recovery) or gets stuck
/// (DecodeFailure, returned as nullopt).
class SparseRecovery {
 public:
  SparseRecovery(std::uint32_t n, std::uint32_t k, double delta, std::uint64_t seed);

  void update(std::uint32_t i, std::int64_t delta);
  void apply_uniform_offset(std::int64_t offset);

  /// Nonzero coordinates and values, or nullopt on DecodeFailure (residue left
  /// after peeling, or more than k coordinates recovered).
  std::optional<std::map<std::uint32_t, std::int64_t>> decode() const;

  SparseRecovery& operator+=(const SparseRecovery& other);
  friend bool operator==(const SparseRecovery&, const SparseRecovery&) = default;

  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t k() const noexcept { return k_; }
  std::uint32_t rows() const noexcept { return rows_; }
  std::uint32_t buckets() const noexcept { return buckets_; }
  std::size_t space_bytes() const noexcept {
    return (count_.size() + idsum_.size() + finger_.size()) * sizeof(std::uint64_t);
  }

  std::string serialize() const;
  static SparseRecovery deserialize(std::string_view bytes);

 private:
  SparseRecovery() = default;
  std::uint32_t bucket(std::uint32_t row, std::uint32_t i) const;
  std::uint64_t z_pow(std::uint32_t i) const;

  std::uint32_t n_ = 0;
  std::uint32_t k_ = 0;
  double delta_ = 0;
  std::uint64_t seed_ = 0;
  std::uint32_t rows_ = 0;
  std::uint32_t buckets_ = 0;
  std::uint64_t z_ = 0;
  std::vector<std::uint64_t> count_;   // wrapping Σx
  std::vector<std::uint64_t> idsum_;   // wrapping Σx·i
  std::vector<std::uint64_t> finger_;  // Σx·z^i mod 2^61-1
};

}  // namespace sparsestream::sketch
