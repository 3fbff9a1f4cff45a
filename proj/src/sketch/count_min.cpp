#include "sparsestream/sketch/count_min.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "sparsestream/detail/mix.hpp"
#include "sparsestream/error.hpp"
#include "sparsestream/sketch/serialize.hpp"

namespace sparsestream::sketch {

using detail::mix;

CountMinHH::CountMinHH(std::uint32_t n, double psi, double tau, double delta, std::uint64_t seed)
    : n_(n), psi_(psi), tau_(tau), delta_(delta), seed_(seed) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "sketch needs n >= 1");
  if (!(psi > 0.0 && psi < 1.0) || !(tau > 0.0 && tau < 1.0) || !(delta > 0.0 && delta < 1.0))
    throw Error(ErrorKind::InvalidArgument, "psi, tau and delta must lie in (0, 1)");
  levels_ = static_cast<std::uint32_t>(std::bit_width(n - 1)) + 1;
  const double w = std::ceil(std::numbers::e / psi);
  const double d = std::ceil(std::log(2.0 * levels_ / (delta * tau)));
  if (w > 1e8 || w * d * levels_ > 1e9) throw Error(ErrorKind::TooLarge, "Count-Min table too large");
  width_ = static_cast<std::uint32_t>(w);
  depth_ = static_cast<std::uint32_t>(std::max(1.0, d));
  table_.assign(std::size_t{levels_} * depth_ * width_, 0);
}

std::size_t CountMinHH::slot(std::uint32_t level, std::uint32_t row, std::uint64_t prefix) const {
  const std::uint64_t h = mix(seed_, (std::uint64_t{level} << 32) | row, prefix);
  return (std::size_t{level} * depth_ + row) * width_ + static_cast<std::size_t>(h % width_);
}

void CountMinHH::update(std::uint32_t i, std::int64_t delta) {
  if (i < 1 || i > n_) throw Error(ErrorKind::CoordinateOutOfRange, "coordinate " + std::to_string(i));
  const auto d = static_cast<std::uint64_t>(delta);
  const std::uint64_t key = i - 1;
  for (std::uint32_t l = 0; l < levels_; ++l)
    for (std::uint32_t r = 0; r < depth_; ++r) table_[slot(l, r, key >> l)] += d;
  total_ += delta;
}

std::int64_t CountMinHH::prefix_estimate(std::uint32_t level, std::uint64_t prefix) const {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::uint32_t r = 0; r < depth_; ++r)
    best = std::min(best, static_cast<std::int64_t>(table_[slot(level, r, prefix)]));
  return best;
}

std::int64_t CountMinHH::estimate(std::uint32_t i) const {
  if (i < 1 || i > n_) throw Error(ErrorKind::CoordinateOutOfRange, "coordinate " + std::to_string(i));
  return prefix_estimate(0, i - 1);
}

std::vector<std::pair<std::uint32_t, std::int64_t>> CountMinHH::heavy_hitters() const {
  std::vector<std::pair<std::uint32_t, std::int64_t>> out;
  if (total_ <= 0) return out;
  const double threshold = (psi_ + tau_) * static_cast<double>(total_);
  std::vector<std::uint64_t> frontier{0};
  for (std::uint32_t l = levels_; l-- > 0;) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t p : frontier) {
      for (std::uint64_t child : {p << 1, (p << 1) | 1}) {
        // The top level has a single prefix, reached from the root as child 0.
        if (l + 1 == levels_ && child != 0) continue;
        if ((child << l) >= n_) continue;
        const std::int64_t est = prefix_estimate(l, child);
        if (static_cast<double>(est) >= threshold) {
          if (l == 0) out.emplace_back(static_cast<std::uint32_t>(child + 1), est);
          else next.push_back(child);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CountMinHH& CountMinHH::operator+=(const CountMinHH& other) {
  if (n_ != other.n_ || seed_ != other.seed_ || levels_ != other.levels_ || width_ != other.width_ ||
      depth_ != other.depth_)
    throw Error(ErrorKind::IncompatibleSketch, "Count-Min sketches differ in parameters or seed");
  for (std::size_t k = 0; k < table_.size(); ++k) table_[k] += other.table_[k];
  total_ += other.total_;
  return *this;
}

std::string CountMinHH::serialize() const {
  ByteWriter w(SketchTag::CountMin);
  w.u32(n_);
  w.f64(psi_);
  w.f64(tau_);
  w.f64(delta_);
  w.u64(seed_);
  w.u64(static_cast<std::uint64_t>(total_));
  w.u64s(table_);
  return std::move(w).take();
}

CountMinHH CountMinHH::deserialize(std::string_view bytes) {
  ByteReader r(bytes, SketchTag::CountMin);
  const std::uint32_t n = r.u32();
  const double psi = r.f64();
  const double tau = r.f64();
  const double delta = r.f64();
  const std::uint64_t seed = r.u64();
  CountMinHH s;
  try {
    s = CountMinHH(n, psi, tau, delta, seed);
  } catch (const Error& e) {
    throw Error(ErrorKind::CorruptSketch, std::string("Count-Min parameters: ") + e.what());
  }
  s.total_ = static_cast<std::int64_t>(r.u64());
  s.table_ = r.u64s(s.table_.size());
  r.finish();
  return s;
}

}  // namespace sparsestream::sketch
