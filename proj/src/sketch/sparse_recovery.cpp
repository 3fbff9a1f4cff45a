#include "sparsestream/sketch/sparse_recovery.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "sparsestream/detail/mix.hpp"
#include "sparsestream/error.hpp"
#include "sparsestream/sketch/serialize.hpp"

namespace sparsestream::sketch {

using namespace detail;

namespace {

std::uint32_t row_count(std::uint32_t k, double delta) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "sparse recovery needs k >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorKind::InvalidArgument, "delta must lie in (0, 1)");
  const double r = std::ceil(std::log2(static_cast<double>(k) / delta));
  return static_cast<std::uint32_t>(std::clamp(r, 3.0, 24.0));
}

}  // namespace

SparseRecovery::SparseRecovery(std::uint32_t n, std::uint32_t k, double delta, std::uint64_t seed)
    : n_(n), k_(k), delta_(delta), seed_(seed) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "sketch needs n >= 1");
  rows_ = row_count(k, delta);
  buckets_ = 2 * k;
  z_ = mod61(mix(seed, 0x7a7a7a7aULL)) % (kMersenne61 - 2) + 2;
  const std::size_t cells = std::size_t{rows_} * buckets_;
  count_.assign(cells, 0);
  idsum_.assign(cells, 0);
  finger_.assign(cells, 0);
}

std::uint32_t SparseRecovery::bucket(std::uint32_t row, std::uint32_t i) const {
  return row * buckets_ + static_cast<std::uint32_t>(mix(seed_, row, i) % buckets_);
}

std::uint64_t SparseRecovery::z_pow(std::uint32_t i) const { return powmod61(z_, i); }

void SparseRecovery::update(std::uint32_t i, std::int64_t delta) {
  if (i < 1 || i > n_) throw Error(ErrorKind::CoordinateOutOfRange, "coordinate " + std::to_string(i));
  if (delta == 0) return;
  const auto d = static_cast<std::uint64_t>(delta);
  const std::uint64_t f = mulmod61(signed_mod61(delta), z_pow(i));
  for (std::uint32_t r = 0; r < rows_; ++r) {
    const std::uint32_t c = bucket(r, i);
    count_[c] += d;
    idsum_[c] += d * i;
    finger_[c] = addmod61(finger_[c], f);
  }
}

void SparseRecovery::apply_uniform_offset(std::int64_t offset) {
  if (offset == 0) return;
  for (std::uint32_t i = 1; i <= n_; ++i) update(i, offset);
}

std::optional<std::map<std::uint32_t, std::int64_t>> SparseRecovery::decode() const {
  auto count = count_;
  auto idsum = idsum_;
  auto finger = finger_;
  std::map<std::uint32_t, std::int64_t> out;

  // Returns the coordinate a cell certifies, or 0 when it is not pure.
  auto pure = [&](std::uint32_t c) -> std::uint32_t {
    const auto x = static_cast<std::int64_t>(count[c]);
    if (x == 0) return 0;
    const auto s = static_cast<std::int64_t>(idsum[c]);
    if (s % x != 0) return 0;
    const std::int64_t i = s / x;
    if (i < 1 || i > n_) return 0;
    const auto id = static_cast<std::uint32_t>(i);
    if (bucket(c / buckets_, id) != c) return 0;
    if (finger[c] != mulmod61(signed_mod61(x), z_pow(id))) return 0;
    return id;
  };

  std::deque<std::uint32_t> queue;
  for (std::uint32_t c = 0; c < count.size(); ++c)
    if (pure(c) != 0) queue.push_back(c);

  while (!queue.empty()) {
    const std::uint32_t c = queue.front();
    queue.pop_front();
    const std::uint32_t id = pure(c);
    if (id == 0) continue;  // drained by an earlier peel
    const auto x = static_cast<std::int64_t>(count[c]);
    out[id] += x;
    if (out.size() > k_) return std::nullopt;
    const auto d = static_cast<std::uint64_t>(x);
    const std::uint64_t f = mulmod61(signed_mod61(x), z_pow(id));
    for (std::uint32_t r = 0; r < rows_; ++r) {
      const std::uint32_t b = bucket(r, id);
      count[b] -= d;
      idsum[b] -= d * id;
      finger[b] = addmod61(finger[b], kMersenne61 - f);
      if (pure(b) != 0) queue.push_back(b);
    }
  }

  for (std::size_t c = 0; c < count.size(); ++c)
    if (count[c] != 0 || idsum[c] != 0 || finger[c] != 0) return std::nullopt;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

SparseRecovery& SparseRecovery::operator+=(const SparseRecovery& other) {
  if (n_ != other.n_ || k_ != other.k_ || seed_ != other.seed_ || rows_ != other.rows_)
    throw Error(ErrorKind::IncompatibleSketch, "sparse-recovery sketches differ in parameters or seed");
  for (std::size_t c = 0; c < count_.size(); ++c) {
    count_[c] += other.count_[c];
    idsum_[c] += other.idsum_[c];
    finger_[c] = addmod61(finger_[c], other.finger_[c]);
  }
  return *this;
}

std::string SparseRecovery::serialize() const {
  ByteWriter w(SketchTag::SparseRecovery);
  w.u32(n_);
  w.u32(k_);
  w.f64(delta_);
  w.u64(seed_);
  w.u64s(count_);
  w.u64s(idsum_);
  w.u64s(finger_);
  return std::move(w).take();
}

SparseRecovery SparseRecovery::deserialize(std::string_view bytes) {
  ByteReader r(bytes, SketchTag::SparseRecovery);
  const std::uint32_t n = r.u32();
  const std::uint32_t k = r.u32();
  const double delta = r.f64();
  const std::uint64_t seed = r.u64();
  SparseRecovery s;
  try {
    s = SparseRecovery(n, k, delta, seed);
  } catch (const Error& e) {
    throw Error(ErrorKind::CorruptSketch, std::string("sparse-recovery parameters: ") + e.what());
  }
  const std::size_t cells = s.count_.size();
  s.count_ = r.u64s(cells);
  s.idsum_ = r.u64s(cells);
  s.finger_ = r.u64s(cells);
  for (auto f : s.finger_)
    if (f >= kMersenne61) throw Error(ErrorKind::CorruptSketch, "fingerprint outside the field");
  r.finish();
  return s;
}

}  // namespace sparsestream::sketch
