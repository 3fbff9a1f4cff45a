#include "sparsestream/hash.hpp"

#include <cmath>
#include <random>

namespace sparsestream {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (x % p == 0) return x == p;
  }
  std::uint64_t d = x - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a deterministic witness set below 3.3e24.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t y = powmod(a, d, x);
    if (y == 1 || y == x - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      y = mulmod(y, y, x);
      if (y == x - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t x) {
  if (x <= 2) return 2;
  if ((x & 1) == 0) ++x;
  while (!is_prime(x)) x += 2;
  return x;
}

KWiseHash::KWiseHash(unsigned k, std::uint64_t domain, std::uint64_t codomain, std::uint64_t seed)
    : domain_(domain), codomain_(codomain) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "k-wise hash needs k >= 1");
  if (domain == 0 || codomain == 0) throw Error(ErrorKind::InvalidArgument, "empty domain or codomain");
  if (codomain > (std::uint64_t{1} << 63)) throw Error(ErrorKind::InvalidArgument, "codomain exceeds 2^63");
  prime_ = next_prime(std::max(codomain, domain + 1));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> coeff(0, prime_ - 1);
  coeffs_.resize(k);
  for (auto& c : coeffs_) c = coeff(rng);
}

std::uint64_t KWiseHash::operator()(std::uint64_t x) const {
  if (x < 1 || x > domain_)
    throw Error(ErrorKind::DomainViolation,
                std::to_string(x) + " outside [1, " + std::to_string(domain_) + "]");
  std::uint64_t acc = 0;
  for (std::uint64_t c : coeffs_) acc = static_cast<std::uint64_t>((static_cast<u128>(acc) * x + c) % prime_);
  return acc % codomain_ + 1;
}

unsigned min_wise_independence(double epsilon, unsigned c_h) {
  const auto bits = static_cast<unsigned>(std::ceil(std::log2(1.0 / epsilon) - 1e-12));
  return std::max(2u, c_h * std::max(1u, bits));
}

namespace {

std::uint64_t cube_checked(double epsilon, std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "min-wise hash needs n >= 1");
  if (n > MinWiseHash::kMaxN) throw Error(ErrorKind::TooLarge, "n^3 must fit below 2^63");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw Error(ErrorKind::EpsilonOutOfRange, "epsilon must lie in (0, 1)");
  if (n >= 2 && epsilon < 1.0 / (static_cast<double>(n) * static_cast<double>(n)))
    throw Error(ErrorKind::EpsilonOutOfRange, "epsilon below n^-2");
  return n * n * n;
}

}  // namespace

MinWiseHash::MinWiseHash(double epsilon, std::uint64_t n, std::uint64_t seed, unsigned c_h)
    : epsilon_(epsilon),
      inner_(min_wise_independence(epsilon, c_h), n, cube_checked(epsilon, n), seed) {}

bool MinWiseHash::is_min_of(VertexId x, std::span<const VertexId> others) const {
  const std::uint64_t hx = inner_(x);
  for (VertexId y : others) {
    const std::uint64_t hy = inner_(y);
    if (hy < hx || (hy == hx && y < x)) return false;
  }
  return true;
}

}  // namespace sparsestream
