#pragma once

#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>
#include <vector>

#include "sparsestream/error.hpp"

namespace sparsestream::sketch {

/// Binary layout: "SPSK", u16 version, u16 type tag, type-specific
/// parameters, then cells. All integers little-endian; doubles as IEEE-754
/// bit patterns.
inline constexpr char kMagic[4] = {'S', 'P', 'S', 'K'};
inline constexpr std::uint16_t kFormatVersion = 1;

enum class SketchTag : std::uint16_t { L0 = 1, L1 = 2, SparseRecovery = 3, CountMin = 4 };

class ByteWriter {
 public:
  explicit ByteWriter(SketchTag tag) {
    out_.append(kMagic, 4);
    u16(kFormatVersion);
    u16(static_cast<std::uint16_t>(tag));
  }

  void u16(std::uint16_t v) { put(v, 2); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void f64(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    u64(bits);
  }
  void u64s(const std::vector<std::uint64_t>& v) {
    u64(v.size());
    for (auto x : v) u64(x);
  }

  std::string take() && { return std::move(out_); }

 private:
  void put(std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  std::string out_;
};

class ByteReader {
 public:
  ByteReader(std::string_view data, SketchTag expected) : data_(data) {
    if (data_.size() < 8 || std::memcmp(data_.data(), kMagic, 4) != 0)
      throw Error(ErrorKind::CorruptSketch, "bad magic");
    pos_ = 4;
    if (u16() != kFormatVersion) throw Error(ErrorKind::CorruptSketch, "unsupported version");
    if (u16() != static_cast<std::uint16_t>(expected))
      throw Error(ErrorKind::IncompatibleSketch, "serialized sketch has a different type");
  }

  std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  double f64() {
    const std::uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }
  std::vector<std::uint64_t> u64s(std::size_t expected) {
    const std::uint64_t count = u64();
    if (count != expected) throw Error(ErrorKind::CorruptSketch, "cell count does not match parameters");
    if (data_.size() - pos_ < count * 8) throw Error(ErrorKind::CorruptSketch, "truncated cells");
    std::vector<std::uint64_t> v(count);
    for (auto& x : v) x = u64();
    return v;
  }
  void finish() const {
    if (pos_ != data_.size()) throw Error(ErrorKind::CorruptSketch, "trailing bytes");
  }

 private:
  std::uint64_t get(int bytes) {
    if (data_.size() - pos_ < static_cast<std::size_t>(bytes)) throw Error(ErrorKind::CorruptSketch, "truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    pos_ += bytes;
    return v;
  }

  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace sparsestream::sketch
