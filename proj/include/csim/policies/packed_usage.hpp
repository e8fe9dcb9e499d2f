#ifndef CSIM_POLICIES_PACKED_USAGE_HPP
#define CSIM_POLICIES_PACKED_USAGE_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "csim/binio.hpp"

namespace csim {

// Bit-packed 2-bit saturating counter per cache line; each byte holds 4
// counters. Writing one line's counter leaves the other three untouched.
class PackedUsage {
 public:
  PackedUsage() = default;
  explicit PackedUsage(uint64_t num_lines)
      : num_lines_(num_lines), bytes_((num_lines + 3) / 4, 0) {}

  uint64_t size() const { return num_lines_; }
  uint64_t state_bits() const { return num_lines_ * 2; }

  uint8_t get(uint64_t line_index) const {
    check(line_index);
    return (bytes_[line_index >> 2] >> shift(line_index)) & 0x3;
  }

  void set(uint64_t line_index, uint8_t value) {
    check(line_index);
    if (value > 3) throw std::out_of_range("PackedUsage value must be in [0,3]");
    uint8_t& b = bytes_[line_index >> 2];
    b = static_cast<uint8_t>((b & ~(0x3 << shift(line_index))) | (value << shift(line_index)));
  }

  void increment(uint64_t line_index) {
    uint8_t v = get(line_index);
    if (v < 3) set(line_index, v + 1);
  }

  void reset(uint64_t line_index) { set(line_index, 0); }

  const std::vector<uint8_t>& raw() const { return bytes_; }

  void save(ByteWriter& w) const {
    w.u64(num_lines_);
    w.bytes(bytes_.data(), bytes_.size());
  }
  void load(ByteReader& r) {
    num_lines_ = r.u64();
    bytes_.assign((num_lines_ + 3) / 4, 0);
    for (auto& b : bytes_) b = r.u8();
  }

 private:
  static unsigned shift(uint64_t idx) { return static_cast<unsigned>((idx & 0x3) * 2); }
  void check(uint64_t idx) const {
    if (idx >= num_lines_) throw std::out_of_range("PackedUsage index out of range");
  }

  uint64_t num_lines_ = 0;
  std::vector<uint8_t> bytes_;
};

}  // namespace csim

#endif
