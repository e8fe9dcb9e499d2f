#ifndef CSIM_POLICIES_RRIP_HPP
#define CSIM_POLICIES_RRIP_HPP

#include <vector>

#include "csim/policy.hpp"

namespace csim {

// SRRIP (2-bit RRPV, insert at 2, promote to 0 on demand hit). DRRIP adds
// set-dueling between SRRIP and bimodal insertion with a 10-bit PSEL.
class RripPolicy : public ReplacementPolicy {
 public:
  static constexpr uint8_t kMaxRrpv = 3;

  RripPolicy(const PolicyContext& ctx, bool dynamic)
      : geom_(ctx.llc), dynamic_(dynamic), rrpv_(ctx.llc.num_lines(), kMaxRrpv) {
    leader_period_ = geom_.num_sets / 32;
    if (leader_period_ < 2) leader_period_ = 2;
  }

  std::string_view name() const override { return dynamic_ ? "drrip" : "srrip"; }

  void on_access(const PolicyEvent& e) override {
    if (!dynamic_ || e.hit) return;
    // Leader-set misses steer PSEL: SRRIP leaders push up, bimodal leaders down.
    uint32_t m = e.set % leader_period_;
    if (m == 0 && psel_ < 1023) ++psel_;
    else if (m == 1 && psel_ > 0) --psel_;
  }

  int find_victim(std::span<const CacheLine> set, const PolicyEvent& e) override {
    (void)set;
    uint8_t* r = &rrpv_[uint64_t(e.set) * geom_.assoc];
    for (;;) {
      for (uint32_t w = 0; w < geom_.assoc; ++w)
        if (r[w] == kMaxRrpv) return static_cast<int>(w);
      for (uint32_t w = 0; w < geom_.assoc; ++w) ++r[w];
    }
  }

  void update_state(const PolicyEvent& e) override {
    uint8_t& r = rrpv_[uint64_t(e.set) * geom_.assoc + e.way];
    if (e.hit) {
      if (is_demand(e.kind)) r = 0;
      return;
    }
    if (e.kind == PolicyAccessKind::Prefetch || e.kind == PolicyAccessKind::Writeback) {
      r = kMaxRrpv;
      return;
    }
    r = insertion_rrpv(e.set);
  }

  uint64_t state_bits() const override {
    uint64_t bits = geom_.num_lines() * 2;
    if (dynamic_) bits += 10 + 5;  // PSEL + bimodal throttle counter
    return bits;
  }

  void save(ByteWriter& w) const override {
    w.u32(psel_);
    w.u32(brip_ctr_);
    w.bytes(rrpv_.data(), rrpv_.size());
  }
  void load(ByteReader& r) override {
    psel_ = r.u32();
    brip_ctr_ = r.u32();
    for (auto& v : rrpv_) v = r.u8();
  }

 protected:
  uint8_t insertion_rrpv(uint32_t set) {
    if (!dynamic_) return 2;
    uint32_t m = set % leader_period_;
    bool bimodal = m == 1 || (m != 0 && psel_ >= 512);
    if (!bimodal) return 2;
    // Bimodal: mostly distant, 1 in 32 inserted at long-but-reachable.
    brip_ctr_ = (brip_ctr_ + 1) & 31;
    return brip_ctr_ == 0 ? 2 : kMaxRrpv;
  }

  CacheGeometry geom_;
  bool dynamic_;
  std::vector<uint8_t> rrpv_;
  uint32_t leader_period_ = 64;
  uint32_t psel_ = 512;
  uint32_t brip_ctr_ = 0;
};

// SHiP: SRRIP ranking plus a signature hit-counter table trained at
// eviction time. Blocks from signatures that historically die unused are
// inserted at distant re-reference priority.
class ShipPolicy final : public RripPolicy {
 public:
  static constexpr unsigned kShctBits = 14;

  explicit ShipPolicy(const PolicyContext& ctx)
      : RripPolicy(ctx, false), shct_(1u << kShctBits, 1) {}

  std::string_view name() const override { return "ship"; }

  void on_access(const PolicyEvent&) override {}

  void notify_eviction(const PolicyEvent& e) override {
    uint8_t& c = shct_[e.victim_insert_sig & ((1u << kShctBits) - 1)];
    if (e.victim_was_reused) {
      if (c < 3) ++c;
    } else {
      if (c > 0) --c;
    }
  }

  void update_state(const PolicyEvent& e) override {
    uint8_t& r = rrpv_[uint64_t(e.set) * geom_.assoc + e.way];
    if (e.hit) {
      if (is_demand(e.kind)) r = 0;
      return;
    }
    if (e.kind == PolicyAccessKind::Prefetch || e.kind == PolicyAccessKind::Writeback) {
      r = kMaxRrpv;
      return;
    }
    uint64_t sig = pc_signature(e.pc, 16) & ((1u << kShctBits) - 1);
    r = shct_[sig] == 0 ? kMaxRrpv : 2;
  }

  uint64_t state_bits() const override {
    return geom_.num_lines() * 2 + (uint64_t(1) << kShctBits) * 2;
  }

  void save(ByteWriter& w) const override {
    RripPolicy::save(w);
    w.bytes(shct_.data(), shct_.size());
  }
  void load(ByteReader& r) override {
    RripPolicy::load(r);
    for (auto& v : shct_) v = r.u8();
  }

 private:
  std::vector<uint8_t> shct_;
};

}  // namespace csim

#endif
