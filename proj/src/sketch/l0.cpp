#include "sparsestream/sketch/l0.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "sparsestream/detail/mix.hpp"
#include "sparsestream/error.hpp"
#include "sparsestream/sketch/serialize.hpp"

namespace sparsestream::sketch {

using namespace detail;

namespace {

void check_fraction(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) throw Error(ErrorKind::InvalidArgument, std::string(name) + " must lie in (0, 1)");
}

}  // namespace

L0Sketch::L0Sketch(std::uint32_t n, double epsilon, double delta, std::uint64_t seed)
    : n_(n), epsilon_(epsilon), delta_(delta), seed_(seed) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "sketch needs n >= 1");
  check_fraction(epsilon, "epsilon");
  check_fraction(delta, "delta");
  reps_ = static_cast<std::uint32_t>(2 * std::ceil(std::log(1.0 / delta)) - 1);
  reps_ = std::max(reps_, 1u);
  levels_ = static_cast<std::uint32_t>(std::bit_width(n - 1)) + 1;  // ⌈log2 n⌉ + 1
  buckets_ = static_cast<std::uint32_t>(std::ceil(8.0 / (epsilon * epsilon)));
  cells_.assign(std::size_t{reps_} * levels_ * buckets_, 0);
}

void L0Sketch::update(std::uint32_t i, std::int64_t delta) {
  if (i < 1 || i > n_) throw Error(ErrorKind::CoordinateOutOfRange, "coordinate " + std::to_string(i));
  if (delta == 0) return;
  const std::uint64_t d = signed_mod61(delta);
  for (std::uint32_t t = 0; t < reps_; ++t) {
    const std::uint64_t rep_seed = mix(seed_, t);
    const std::uint64_t h = mix(rep_seed, i);
    const std::uint32_t top = std::min<std::uint32_t>(std::countr_zero(h | (std::uint64_t{1} << 63)), levels_ - 1);
    // Random nonzero multiplier in GF(2^61-1).
    const std::uint64_t r = mod61(mix(rep_seed, i, 0xf1f1f1f1ULL)) % (kMersenne61 - 1) + 1;
    const std::uint64_t contrib = mulmod61(d, r);
    for (std::uint32_t j = 0; j <= top; ++j) {
      const auto b = static_cast<std::uint32_t>(mix(rep_seed, i, j + 1) % buckets_);
      std::uint64_t& c = cell(t, j, b);
      c = addmod61(c, contrib);
    }
  }
}

void L0Sketch::apply_uniform_offset(std::int64_t offset) {
  if (offset == 0) return;
  for (std::uint32_t i = 1; i <= n_; ++i) update(i, offset);
}

double L0Sketch::estimate_rep(std::uint32_t rep) const {
  const double b = buckets_;
  for (std::uint32_t j = 0; j < levels_; ++j) {
    const auto* row = &cells_[(std::size_t{rep} * levels_ + j) * buckets_];
    const auto occupied = static_cast<double>(std::count_if(row, row + buckets_, [](std::uint64_t c) { return c != 0; }));
    if (occupied <= b / 2 || j + 1 == levels_) {
      if (occupied == 0) return 0.0;
      // Occupancy inversion; saturates gracefully when every bucket is hit.
      const double free = std::max(b - occupied, 0.5);
      const double at_level = std::log(free / b) / std::log1p(-1.0 / b);
      return std::ldexp(at_level, static_cast<int>(j));
    }
  }
  return 0.0;
}

double L0Sketch::estimate() const {
  std::vector<double> per_rep(reps_);
  for (std::uint32_t t = 0; t < reps_; ++t) per_rep[t] = estimate_rep(t);
  const auto mid = per_rep.begin() + reps_ / 2;
  std::nth_element(per_rep.begin(), mid, per_rep.end());
  return *mid;
}

L0Sketch& L0Sketch::operator+=(const L0Sketch& other) {
  if (n_ != other.n_ || seed_ != other.seed_ || reps_ != other.reps_ || levels_ != other.levels_ ||
      buckets_ != other.buckets_)
    throw Error(ErrorKind::IncompatibleSketch, "L0 sketches differ in parameters or seed");
  for (std::size_t k = 0; k < cells_.size(); ++k) cells_[k] = addmod61(cells_[k], other.cells_[k]);
  return *this;
}

std::string L0Sketch::serialize() const {
  ByteWriter w(SketchTag::L0);
  w.u32(n_);
  w.f64(epsilon_);
  w.f64(delta_);
  w.u64(seed_);
  w.u32(reps_);
  w.u32(levels_);
  w.u32(buckets_);
  w.u64s(cells_);
  return std::move(w).take();
}

L0Sketch L0Sketch::deserialize(std::string_view bytes) {
  ByteReader r(bytes, SketchTag::L0);
  L0Sketch s;
  s.n_ = r.u32();
  s.epsilon_ = r.f64();
  s.delta_ = r.f64();
  s.seed_ = r.u64();
  s.reps_ = r.u32();
  s.levels_ = r.u32();
  s.buckets_ = r.u32();
  L0Sketch fresh;
  try {
    fresh = L0Sketch(s.n_, s.epsilon_, s.delta_, s.seed_);
  } catch (const Error& e) {
    throw Error(ErrorKind::CorruptSketch, std::string("L0 parameters: ") + e.what());
  }
  if (fresh.reps_ != s.reps_ || fresh.levels_ != s.levels_ || fresh.buckets_ != s.buckets_)
    throw Error(ErrorKind::CorruptSketch, "L0 shape does not match its parameters");
  s.cells_ = r.u64s(fresh.cells_.size());
  for (auto c : s.cells_)
    if (c >= kMersenne61) throw Error(ErrorKind::CorruptSketch, "L0 cell outside the field");
  r.finish();
  return s;
}

}  // namespace sparsestream::sketch
