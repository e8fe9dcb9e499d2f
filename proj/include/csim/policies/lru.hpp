#ifndef CSIM_POLICIES_LRU_HPP
#define CSIM_POLICIES_LRU_HPP

#include <bit>
#include <vector>

#include "csim/policy.hpp"

namespace csim {

// True LRU over per-line recency stamps. Hardware cost is reported as one
// recency rank of log2(assoc) bits per line.
class LruPolicy final : public ReplacementPolicy {
 public:
  explicit LruPolicy(const PolicyContext& ctx)
      : geom_(ctx.llc), stamps_(ctx.llc.num_lines(), 0) {}

  std::string_view name() const override { return "lru"; }

  int find_victim(std::span<const CacheLine> set, const PolicyEvent& e) override {
    (void)set;
    const uint64_t* s = &stamps_[uint64_t(e.set) * geom_.assoc];
    uint32_t best = 0;
    for (uint32_t w = 1; w < geom_.assoc; ++w)
      if (s[w] < s[best]) best = w;
    return static_cast<int>(best);
  }

  void update_state(const PolicyEvent& e) override {
    stamps_[uint64_t(e.set) * geom_.assoc + e.way] = ++clock_;
  }

  uint64_t state_bits() const override {
    return geom_.num_lines() * std::bit_width(geom_.assoc - 1);
  }

  void save(ByteWriter& w) const override {
    w.u64(clock_);
    for (uint64_t s : stamps_) w.u64(s);
  }
  void load(ByteReader& r) override {
    clock_ = r.u64();
    for (uint64_t& s : stamps_) s = r.u64();
  }

 private:
  CacheGeometry geom_;
  std::vector<uint64_t> stamps_;
  uint64_t clock_ = 0;
};

// Seeded uniform-random victim; deterministic across runs for a fixed seed.
class RandomPolicy final : public ReplacementPolicy {
 public:
  explicit RandomPolicy(const PolicyContext& ctx) : rng_(ctx.seed ^ 0x52414E44) {}

  std::string_view name() const override { return "random"; }

  int find_victim(std::span<const CacheLine> set, const PolicyEvent&) override {
    return static_cast<int>(rng_.below(set.size()));
  }

  void update_state(const PolicyEvent&) override {}

  uint64_t state_bits() const override { return 64; }  // the LFSR seed register

  void save(ByteWriter& w) const override { w.u64(rng_.state()); }
  void load(ByteReader& r) override { rng_.set_state(r.u64()); }

 private:
  SplitMix64 rng_;
};

}  // namespace csim

#endif
