#ifndef CSIM_POLICIES_POLICY6X_HPP
#define CSIM_POLICIES_POLICY6X_HPP

#include <vector>

#include "csim/policies/rdp.hpp"

namespace csim {

// Rolling path-history update shared by the simulator core model and
// policy61: rotate-left-by-1, then XOR in the retiring instruction's pc.
inline uint64_t path_history_step(uint64_t history, uint64_t instr_pc) {
  return ((history << 1) | (history >> 63)) ^ instr_pc;
}

inline std::vector<ParamSpec> rdp_schema() {
  return {
      {"ETR_DEFAULT", true, 12, 0, 15},
      {"ETR_MAX", true, 15, 4, 15},
      {"GRANULARITY", true, 4, 1, 64},
  };
}

inline std::vector<ParamSpec> policy62_schema() {
  return {
      {"P62_BYPASS_CUTOFF", true, -2, -4, 3},
      {"P62_PROTECT_CUTOFF", true, 2, -4, 3},
  };
}

struct PredictorEntry62 {
  uint8_t tag = 0;     // 3 bits
  int8_t counter = 0;  // 3-bit signed saturating, [-4, 3]
};

// SHiP-like hit/miss predictor with two twists: entries are tagged (3-bit
// tag; mismatch resets the entry instead of aliasing), and the counter
// trains on every access rather than at eviction, so it learns while the
// line is still resident. Ranking inside the cache is 2-bit RRPV.
class Policy62 final : public ReplacementPolicy {
 public:
  static constexpr unsigned kTableBits = 12;
  static constexpr uint8_t kMaxRrpv = 3;

  Policy62(const PolicyContext& ctx, const PolicyParams& p)
      : geom_(ctx.llc),
        rrpv_(ctx.llc.num_lines(), kMaxRrpv),
        table_(size_t(1) << kTableBits) {
    bypass_cutoff_ = int(p.get_int("P62_BYPASS_CUTOFF"));
    protect_cutoff_ = int(p.get_int("P62_PROTECT_CUTOFF"));
  }

  std::string_view name() const override { return "policy62"; }

  // Train-and-predict on every demand access; tags must match or the entry
  // is surrendered to the new pc.
  int lookup_train(uint64_t pc, bool hit) {
    uint64_t h = hash64(pc);
    PredictorEntry62& e = table_[h & ((1u << kTableBits) - 1)];
    uint8_t tag = (h >> kTableBits) & 0x7;
    if (e.tag != tag) {
      e.tag = tag;
      e.counter = 0;
      return 0;
    }
    if (hit) {
      if (e.counter < 3) ++e.counter;
    } else {
      if (e.counter > -4) --e.counter;
    }
    return e.counter;
  }

  void on_access(const PolicyEvent& e) override { last_pred_ = lookup_train(e.pc, e.hit); }

  int find_victim(std::span<const CacheLine>, const PolicyEvent& e) override {
    if (is_demand(e.kind) && last_pred_ < bypass_cutoff_) return kBypass;
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
    if (!is_demand(e.kind)) {
      r = kMaxRrpv;
      return;
    }
    if (last_pred_ >= protect_cutoff_) r = 0;
    else if (last_pred_ < bypass_cutoff_) r = kMaxRrpv;
    else r = 2;
  }

  uint64_t state_bits() const override {
    return geom_.num_lines() * 2 + (uint64_t(1) << kTableBits) * 6;
  }

  void save(ByteWriter& w) const override {
    w.bytes(rrpv_.data(), rrpv_.size());
    for (const PredictorEntry62& e : table_) {
      w.u8(e.tag);
      w.u8(static_cast<uint8_t>(e.counter));
    }
    w.i64(last_pred_);
  }
  void load(ByteReader& r) override {
    for (auto& v : rrpv_) v = r.u8();
    for (PredictorEntry62& e : table_) {
      e.tag = r.u8();
      e.counter = static_cast<int8_t>(r.u8());
    }
    last_pred_ = static_cast<int>(r.i64());
  }

  const PredictorEntry62& entry_for(uint64_t pc) const {
    return table_[hash64(pc) & ((1u << kTableBits) - 1)];
  }

 private:
  CacheGeometry geom_;
  std::vector<uint8_t> rrpv_;
  std::vector<PredictorEntry62> table_;
  int bypass_cutoff_ = -2;
  int protect_cutoff_ = 2;
  int last_pred_ = 0;
};

}  // namespace csim

#endif
