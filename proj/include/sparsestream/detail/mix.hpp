#pragma once

#include <cstdint>

namespace sparsestream::detail {

// splitmix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t fmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix(std::uint64_t seed, std::uint64_t a) noexcept {
  return fmix64(seed ^ fmix64(a + 0x632be59bd9b4e019ULL));
}

constexpr std::uint64_t mix(std::uint64_t seed, std::uint64_t a,
                            std::uint64_t b) noexcept {
  return mix(mix(seed, a), b);
}

/// Uniform double in the open interval (0, 1).
constexpr double to_unit_open(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Arithmetic modulo the Mersenne prime 2^61 - 1.
inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

constexpr std::uint64_t mod61(std::uint64_t x) noexcept {
  x = (x & kMersenne61) + (x >> 61);
  return x >= kMersenne61 ? x - kMersenne61 : x;
}

constexpr std::uint64_t mulmod61(std::uint64_t a, std::uint64_t b) noexcept {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  const std::uint64_t lo = static_cast<std::uint64_t>(p) & kMersenne61;
  const std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
  return mod61(lo + hi);
}

constexpr std::uint64_t addmod61(std::uint64_t a, std::uint64_t b) noexcept {
  return mod61(a + b);
}

/// Maps a signed integer onto its residue mod 2^61 - 1.
constexpr std::uint64_t signed_mod61(std::int64_t v) noexcept {
  if (v >= 0) return mod61(static_cast<std::uint64_t>(v));
  const std::uint64_t m = mod61(static_cast<std::uint64_t>(-(v + 1)) + 1);
  return m == 0 ? 0 : kMersenne61 - m;
}

constexpr std::uint64_t powmod61(std::uint64_t base, std::uint64_t exp) noexcept {
  std::uint64_t result = 1;
  base = mod61(base);
  while (exp != 0) {
    if (exp & 1) result = mulmod61(result, base);
    base = mulmod61(base, base);
    exp >>= 1;
  }
  return result;
}

}  // namespace sparsestream::detail
