#ifndef CSIM_PREFETCH_HPP
#define CSIM_PREFETCH_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "csim/binio.hpp"

namespace csim {

// L1D next-line: on a demand miss, fetch the following line (modular in the
// 64-bit address space).
inline uint64_t next_line_prefetch_addr(uint64_t miss_addr, uint64_t line_bytes) {
  return (miss_addr & ~(line_bytes - 1)) + line_bytes;  // wraps mod 2^64
}

// L2 pc-stride prefetcher: 256-entry table direct-mapped by low pc bits.
// Two consecutive equal strides saturate the 2-bit confidence and issue a
// prefetch for addr+stride.
class PcStridePrefetcher {
 public:
  static constexpr unsigned kEntries = 256;

  struct Entry {
    uint64_t last_addr = 0;
    int64_t stride = 0;
    uint8_t confidence = 0;  // 2-bit
    bool valid = false;
  };

  PcStridePrefetcher() : table_(kEntries) {}

  std::optional<uint64_t> on_demand_access(uint64_t pc, uint64_t addr) {
    Entry& e = table_[pc & (kEntries - 1)];
    if (!e.valid) {
      e = {addr, 0, 0, true};
      return std::nullopt;
    }
    int64_t stride = static_cast<int64_t>(addr - e.last_addr);
    if (stride == e.stride) {
      if (e.confidence < 3) ++e.confidence;
    } else {
      e.stride = stride;
      e.confidence = 1;
    }
    e.last_addr = addr;
    if (e.confidence >= 2 && e.stride != 0)
      return addr + static_cast<uint64_t>(e.stride);
    return std::nullopt;
  }

  void save(ByteWriter& w) const {
    for (const Entry& e : table_) {
      w.u64(e.last_addr);
      w.i64(e.stride);
      w.u8(e.confidence);
      w.boolean(e.valid);
    }
  }
  void load(ByteReader& r) {
    for (Entry& e : table_) {
      e.last_addr = r.u64();
      e.stride = r.i64();
      e.confidence = r.u8();
      e.valid = r.boolean();
    }
  }

 private:
  std::vector<Entry> table_;
};

}  // namespace csim

#endif
