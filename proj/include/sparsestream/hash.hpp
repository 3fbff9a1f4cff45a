#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sparsestream/stream.hpp"

namespace sparsestream {

/// Deterministic Miller-Rabin; exact for all 64-bit inputs.
bool is_prime(std::uint64_t x);
/// Smallest prime >= x.
std::uint64_t next_prime(std::uint64_t x);

/// Degree-(k-1) polynomial over GF(P), P the smallest prime >= codomain,
/// mapping [1, domain] into [1, codomain].
class KWiseHash {
 public:
  KWiseHash(unsigned k, std::uint64_t domain, std::uint64_t codomain, std::uint64_t seed);

  std::uint64_t operator()(std::uint64_t x) const;

  unsigned k() const noexcept { return static_cast<unsigned>(coeffs_.size()); }
  std::uint64_t prime() const noexcept { return prime_; }
  std::uint64_t domain() const noexcept { return domain_; }
  std::uint64_t codomain() const noexcept { return codomain_; }
  /// Highest-degree coefficient first.
  const std::vector<std::uint64_t>& coefficients() const noexcept { return coeffs_; }
  std::size_t space_bytes() const noexcept { return coeffs_.size() * sizeof(std::uint64_t) + 3 * sizeof(std::uint64_t); }

 private:
  std::vector<std::uint64_t> coeffs_;
  std::uint64_t prime_;
  std::uint64_t domain_;
  std::uint64_t codomain_;
};

/// ε-min-wise family on [n] with codomain [n^3], built from a
/// (c_h · ⌈log2(1/ε)⌉)-wise independent polynomial.
class MinWiseHash {
 public:
  static constexpr unsigned kDefaultIndependence = 4;
  /// Largest n with n^3 < 2^63.
  static constexpr std::uint64_t kMaxN = 2097151;

  MinWiseHash(double epsilon, std::uint64_t n, std::uint64_t seed,
              unsigned c_h = kDefaultIndependence);

  std::uint64_t operator()(VertexId x) const { return inner_(x); }

  /// Strict minimum over `others`, ties broken towards the smaller id.
  bool is_min_of(VertexId x, std::span<const VertexId> others) const;

  double epsilon() const noexcept { return epsilon_; }
  const KWiseHash& inner() const noexcept { return inner_; }

 private:
  double epsilon_;
  KWiseHash inner_;
};

/// Independence degree c_h · ⌈log2(1/ε)⌉ (at least 2).
unsigned min_wise_independence(double epsilon, unsigned c_h = MinWiseHash::kDefaultIndependence);

}  // namespace sparsestream
