#ifndef CSIM_CACHE_HPP
#define CSIM_CACHE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "csim/binio.hpp"
#include "csim/config.hpp"

namespace csim {

struct CacheLine {
  uint64_t line_addr = 0;   // full line address; stands in for the tag
  uint64_t insert_pc_sig = 0;  // 16-bit hashed pc of the inserting access
  bool valid = false;
  bool dirty = false;
  bool filled_by_prefetch = false;
  bool reused = false;      // hit at least once since fill
};

struct CacheGeometry {
  uint32_t num_sets = 1;
  uint32_t assoc = 1;
  uint32_t line_bytes = 64;

  uint64_t num_lines() const { return uint64_t(num_sets) * assoc; }

  static CacheGeometry from(const LevelConfig& l, uint32_t line_bytes) {
    return {l.num_sets(line_bytes), l.associativity, line_bytes};
  }
};

// Set-associative array with built-in true-LRU bookkeeping. The LRU stamps
// are only consulted for levels whose replacement is not pluggable (L1/L2);
// the LLC victim choice is made by the policy and this class just executes it.
class CacheArray {
 public:
  CacheArray() = default;
  explicit CacheArray(const CacheGeometry& g)
      : geom_(g), lines_(g.num_lines()), stamps_(g.num_lines(), 0) {}

  const CacheGeometry& geometry() const { return geom_; }

  uint32_t set_of(uint64_t line_addr) const {
    return static_cast<uint32_t>(line_addr & (geom_.num_sets - 1));
  }

  int lookup(uint64_t line_addr) const {
    uint32_t s = set_of(line_addr);
    const CacheLine* base = &lines_[uint64_t(s) * geom_.assoc];
    for (uint32_t w = 0; w < geom_.assoc; ++w)
      if (base[w].valid && base[w].line_addr == line_addr) return static_cast<int>(w);
    return -1;
  }

  CacheLine& line(uint32_t set, uint32_t way) { return lines_[uint64_t(set) * geom_.assoc + way]; }
  const CacheLine& line(uint32_t set, uint32_t way) const {
    return lines_[uint64_t(set) * geom_.assoc + way];
  }

  std::span<const CacheLine> set_view(uint32_t set) const {
    return {&lines_[uint64_t(set) * geom_.assoc], geom_.assoc};
  }

  void touch(uint32_t set, uint32_t way) {
    stamps_[uint64_t(set) * geom_.assoc + way] = ++clock_;
  }

  // Lowest-index invalid way, or -1 if the set is full.
  int invalid_way(uint32_t set) const {
    const CacheLine* base = &lines_[uint64_t(set) * geom_.assoc];
    for (uint32_t w = 0; w < geom_.assoc; ++w)
      if (!base[w].valid) return static_cast<int>(w);
    return -1;
  }

  // True-LRU victim (valid way with the oldest stamp; ties -> lowest way).
  uint32_t lru_victim(uint32_t set) const {
    const uint64_t* s = &stamps_[uint64_t(set) * geom_.assoc];
    uint32_t best = 0;
    for (uint32_t w = 1; w < geom_.assoc; ++w)
      if (s[w] < s[best]) best = w;
    return best;
  }

  void save(ByteWriter& w) const {
    w.u32(geom_.num_sets);
    w.u32(geom_.assoc);
    w.u32(geom_.line_bytes);
    w.u64(clock_);
    for (const CacheLine& l : lines_) {
      w.u64(l.line_addr);
      w.u64(l.insert_pc_sig);
      w.u8(static_cast<uint8_t>(l.valid | (l.dirty << 1) | (l.filled_by_prefetch << 2) |
                                (l.reused << 3)));
    }
    for (uint64_t s : stamps_) w.u64(s);
  }

  void load(ByteReader& r) {
    geom_.num_sets = r.u32();
    geom_.assoc = r.u32();
    geom_.line_bytes = r.u32();
    clock_ = r.u64();
    lines_.assign(geom_.num_lines(), CacheLine{});
    stamps_.assign(geom_.num_lines(), 0);
    for (CacheLine& l : lines_) {
      l.line_addr = r.u64();
      l.insert_pc_sig = r.u64();
      uint8_t f = r.u8();
      l.valid = f & 1;
      l.dirty = f & 2;
      l.filled_by_prefetch = f & 4;
      l.reused = f & 8;
    }
    for (uint64_t& s : stamps_) s = r.u64();
  }

 private:
  CacheGeometry geom_;
  std::vector<CacheLine> lines_;
  std::vector<uint64_t> stamps_;
  uint64_t clock_ = 0;
};

}  // namespace csim

#endif
