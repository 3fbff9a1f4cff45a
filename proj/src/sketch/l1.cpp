#include "sparsestream/sketch/l1.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sparsestream/detail/mix.hpp"
#include "sparsestream/error.hpp"
#include "sparsestream/sketch/serialize.hpp"

namespace sparsestream::sketch {

namespace {

constexpr double kScale = 65536.0;  // 2^16
constexpr double kClamp = 16777216.0;  // 2^24

std::uint32_t row_count(double epsilon, double delta, double c) {
  if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0))
    throw Error(ErrorKind::InvalidArgument, "epsilon and delta must lie in (0, 1)");
  if (!(c > 0.0)) throw Error(ErrorKind::InvalidArgument, "row constant must be positive");
  auto r = static_cast<std::uint32_t>(std::ceil(c * std::log(2.0 / delta) / (epsilon * epsilon)));
  return r | 1u;
}

}  // namespace

L1Sketch::L1Sketch(std::uint32_t n, double epsilon, double delta, std::uint64_t seed, double row_constant)
    : n_(n), epsilon_(epsilon), delta_(delta), row_constant_(row_constant), seed_(seed) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "sketch needs n >= 1");
  acc_.assign(row_count(epsilon, delta, row_constant), 0);
}

std::int64_t L1Sketch::coefficient(std::uint32_t row, std::uint32_t i) const {
  const double u = detail::to_unit_open(detail::mix(seed_, row, i));
  const double c = std::clamp(std::tan(std::numbers::pi * (u - 0.5)), -kClamp, kClamp);
  return static_cast<std::int64_t>(std::llround(c * kScale));
}

void L1Sketch::update(std::uint32_t i, std::int64_t delta) {
  if (i < 1 || i > n_) throw Error(ErrorKind::CoordinateOutOfRange, "coordinate " + std::to_string(i));
  if (delta == 0) return;
  const auto d = static_cast<std::uint64_t>(delta);
  for (std::uint32_t r = 0; r < acc_.size(); ++r)
    acc_[r] += d * static_cast<std::uint64_t>(coefficient(r, i));
}

void L1Sketch::apply_uniform_offset(std::int64_t offset) {
  if (offset == 0) return;
  if (!ones_) {
    ones_.emplace(acc_.size(), 0);
    for (std::uint32_t r = 0; r < acc_.size(); ++r)
      for (std::uint32_t i = 1; i <= n_; ++i) (*ones_)[r] += static_cast<std::uint64_t>(coefficient(r, i));
  }
  const auto d = static_cast<std::uint64_t>(offset);
  for (std::size_t r = 0; r < acc_.size(); ++r) acc_[r] += d * (*ones_)[r];
}

double L1Sketch::estimate() const {
  std::vector<double> mags(acc_.size());
  for (std::size_t r = 0; r < acc_.size(); ++r)
    mags[r] = std::abs(static_cast<double>(static_cast<std::int64_t>(acc_[r]))) / kScale;
  const auto mid = mags.begin() + static_cast<std::ptrdiff_t>(mags.size() / 2);
  std::nth_element(mags.begin(), mid, mags.end());
  return *mid;
}

L1Sketch& L1Sketch::operator+=(const L1Sketch& other) {
  if (n_ != other.n_ || seed_ != other.seed_ || acc_.size() != other.acc_.size())
    throw Error(ErrorKind::IncompatibleSketch, "L1 sketches differ in parameters or seed");
  for (std::size_t r = 0; r < acc_.size(); ++r) acc_[r] += other.acc_[r];
  return *this;
}

std::string L1Sketch::serialize() const {
  ByteWriter w(SketchTag::L1);
  w.u32(n_);
  w.f64(epsilon_);
  w.f64(delta_);
  w.f64(row_constant_);
  w.u64(seed_);
  w.u64s(acc_);
  return std::move(w).take();
}

L1Sketch L1Sketch::deserialize(std::string_view bytes) {
  ByteReader r(bytes, SketchTag::L1);
  L1Sketch s;
  s.n_ = r.u32();
  s.epsilon_ = r.f64();
  s.delta_ = r.f64();
  s.row_constant_ = r.f64();
  s.seed_ = r.u64();
  std::uint32_t rows = 0;
  try {
    if (s.n_ == 0) throw Error(ErrorKind::InvalidArgument, "n = 0");
    rows = row_count(s.epsilon_, s.delta_, s.row_constant_);
  } catch (const Error& e) {
    throw Error(ErrorKind::CorruptSketch, std::string("L1 parameters: ") + e.what());
  }
  s.acc_ = r.u64s(rows);
  r.finish();
  return s;
}

}  // namespace sparsestream::sketch
