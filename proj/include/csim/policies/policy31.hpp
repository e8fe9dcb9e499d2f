#ifndef CSIM_POLICIES_POLICY31_HPP
#define CSIM_POLICIES_POLICY31_HPP

#include <cmath>
#include <vector>

#include "csim/policies/packed_usage.hpp"
#include "csim/policies/rdp.hpp"

namespace csim {

// The 13 runtime tunables: score constants (BONUS_PER_USE, ETR_DEFAULT,
// ETR_MAX, DEAD_INFLATION, PF_EASY_PENALTY, PF_HARD_BONUS) and thresholds /
// decay controls (GRANULARITY, IQP_SAT, PF_EASY_THRESHOLD, PF_HARD_THRESHOLD,
// CPAAT_WINDOW, CPAAT_BASE_THRESHOLD, CPAAT_PRESSURE_SCALE).
inline std::vector<ParamSpec> policy31_schema() {
  return {
      {"BONUS_PER_USE", true, 2, 0, 8},
      {"ETR_DEFAULT", true, 12, 0, 15},
      {"ETR_MAX", true, 15, 4, 15},
      {"GRANULARITY", true, 4, 1, 64},
      {"DEAD_INFLATION", true, 6, 0, 15},
      {"IQP_SAT", true, 3, 1, 3},
      {"PF_EASY_THRESHOLD", true, 12, 1, 15},
      {"PF_HARD_THRESHOLD", true, 0, 0, 14},
      {"PF_EASY_PENALTY", true, 4, 0, 15},
      {"PF_HARD_BONUS", true, 4, 0, 15},
      {"CPAAT_WINDOW", true, 256, 16, 1024},
      {"CPAAT_BASE_THRESHOLD", true, 12, 0, 15},
      {"CPAAT_PRESSURE_SCALE", false, 8.0, 0, 15},
  };
}

struct Policy31Mechanisms {
  bool iqp = true;
  bool hawks_doves = true;
  bool prefetch_aware = true;
  bool cpaat = true;
};

// Reuse-distance eviction augmented with four mechanisms, each individually
// switchable for ablation. With all four disabled the policy is exactly the
// plain rdp policy.
//
//   iqp            per-signature dead-block counters inflate the predicted
//                  reuse of insertions from signatures whose blocks die unused
//   hawks_doves    2-bit per-line usage counter; heavily used blocks get an
//                  eviction-score discount and stick around
//   prefetch_aware per-signature prefetch-coverage counters; easy-to-prefetch
//                  sources are inserted far, hard ones near
//   cpaat          pressure-adaptive clean-fill bypass: the bypass threshold
//                  tightens as the recent demand miss rate rises
class Policy31 final : public ReplacementPolicy {
 public:
  static constexpr unsigned kIqpBits = 12;
  static constexpr unsigned kPfBits = 12;

  Policy31(const PolicyContext& ctx, const PolicyParams& p, Policy31Mechanisms mech)
      : geom_(ctx.llc),
        mech_(mech),
        prefetching_(ctx.prefetch_enabled),
        usage_(ctx.llc.num_lines()),
        iqp_(size_t(1) << kIqpBits, 0),
        pf_cov_(size_t(1) << kPfBits, 0) {
    bonus_per_use_ = int(p.get_int("BONUS_PER_USE"));
    dead_inflation_ = int(p.get_int("DEAD_INFLATION"));
    iqp_sat_ = int(p.get_int("IQP_SAT"));
    pf_easy_threshold_ = int(p.get_int("PF_EASY_THRESHOLD"));
    pf_hard_threshold_ = int(p.get_int("PF_HARD_THRESHOLD"));
    pf_easy_penalty_ = int(p.get_int("PF_EASY_PENALTY"));
    pf_hard_bonus_ = int(p.get_int("PF_HARD_BONUS"));
    cpaat_window_ = uint32_t(p.get_int("CPAAT_WINDOW"));
    cpaat_base_threshold_ = int(p.get_int("CPAAT_BASE_THRESHOLD"));
    cpaat_pressure_scale_ = p.get("CPAAT_PRESSURE_SCALE");
    core_.configure(ctx.llc, int(p.get_int("ETR_DEFAULT")), int(p.get_int("ETR_MAX")),
                    int(p.get_int("GRANULARITY")));
    window_bits_.assign(cpaat_window_, 0);
  }

  std::string_view name() const override { return "policy31"; }

  void on_access(const PolicyEvent& e) override {
    uint64_t sig = EtrCore::signature_of(e.pc);
    core_.observe_demand(e.set, e.line_addr, sig);
    if (mech_.iqp && e.hit) {
      uint8_t& c = iqp_[sig & ((1u << kIqpBits) - 1)];
      if (c > 0) --c;
    }
    if (mech_.prefetch_aware && prefetching_) {
      uint8_t& c = pf_cov_[sig & ((1u << kPfBits) - 1)];
      if (e.hit && e.was_prefetched_line) {
        if (c < 15) ++c;
      } else if (!e.hit) {
        if (c > 0) --c;
      }
    }
    if (mech_.cpaat) push_window(!e.hit);
  }

  int find_victim(std::span<const CacheLine>, const PolicyEvent& e) override {
    if (mech_.cpaat && e.kind != PolicyAccessKind::Writeback &&
        insertion_etr(e) > bypass_threshold())
      return kBypass;
    uint32_t best = 0;
    int best_score = score(e.set, 0);
    for (uint32_t w = 1; w < geom_.assoc; ++w) {
      int s = score(e.set, w);
      if (s > best_score) {
        best_score = s;
        best = w;
      }
    }
    return static_cast<int>(best);
  }

  void notify_eviction(const PolicyEvent& e) override {
    if (mech_.iqp && !e.victim_was_reused) {
      uint8_t& c = iqp_[e.victim_insert_sig & ((1u << kIqpBits) - 1)];
      if (c < 3) ++c;
    }
  }

  void update_state(const PolicyEvent& e) override {
    uint64_t idx = uint64_t(e.set) * geom_.assoc + e.way;
    if (e.hit) {
      if (!is_demand(e.kind)) return;
      if (mech_.hawks_doves) usage_.increment(idx);
      core_.set_etr(e.set, e.way, core_.predict(EtrCore::signature_of(e.pc)));
      return;
    }
    if (mech_.hawks_doves) usage_.reset(idx);
    core_.set_etr(e.set, e.way, insertion_etr(e));
  }

  uint64_t state_bits() const override {
    uint64_t bits = core_.state_bits();
    bits += usage_.state_bits();
    bits += (uint64_t(1) << kIqpBits) * 2;
    bits += (uint64_t(1) << kPfBits) * 4;
    bits += cpaat_window_ + 16 + 16;  // window ring + cursor + miss count
    return bits;
  }

  void save(ByteWriter& w) const override {
    core_.save(w);
    usage_.save(w);
    w.bytes(iqp_.data(), iqp_.size());
    w.bytes(pf_cov_.data(), pf_cov_.size());
    w.u32(window_pos_);
    w.u32(window_seen_);
    w.u32(window_misses_);
    w.bytes(window_bits_.data(), window_bits_.size());
  }
  void load(ByteReader& r) override {
    core_.load(r);
    usage_.load(r);
    for (auto& v : iqp_) v = r.u8();
    for (auto& v : pf_cov_) v = r.u8();
    window_pos_ = r.u32();
    window_seen_ = r.u32();
    window_misses_ = r.u32();
    for (auto& v : window_bits_) v = r.u8();
  }

  // Exposed for tests.
  double pressure() const {
    uint32_t n = window_seen_ < cpaat_window_ ? window_seen_ : cpaat_window_;
    return n == 0 ? 0.0 : double(window_misses_) / double(n);
  }
  int bypass_threshold() const {
    return cpaat_base_threshold_ - int(std::lround(pressure() * cpaat_pressure_scale_));
  }
  EtrCore& core() { return core_; }
  uint8_t iqp_counter(uint64_t sig) const { return iqp_[sig & ((1u << kIqpBits) - 1)]; }
  uint8_t pf_coverage(uint64_t sig) const { return pf_cov_[sig & ((1u << kPfBits) - 1)]; }

  int insertion_etr(const PolicyEvent& e) const {
    uint64_t sig = EtrCore::signature_of(e.pc);
    int etr = core_.predict(sig);
    if (mech_.iqp && iqp_[sig & ((1u << kIqpBits) - 1)] >= iqp_sat_) {
      etr += dead_inflation_;
      if (etr > core_.etr_max()) etr = core_.etr_max();
    }
    if (mech_.prefetch_aware && prefetching_) {
      int cov = pf_cov_[sig & ((1u << kPfBits) - 1)];
      if (cov >= pf_easy_threshold_) etr += pf_easy_penalty_;
      else if (cov <= pf_hard_threshold_) etr -= pf_hard_bonus_;
      if (etr > core_.etr_max()) etr = core_.etr_max();
      if (etr < 0) etr = 0;
    }
    return etr;
  }

 private:
  int score(uint32_t set, uint32_t way) const {
    int eff = std::abs(int(core_.etr(set, way)));
    if (mech_.hawks_doves)
      eff -= int(usage_.get(uint64_t(set) * geom_.assoc + way)) * bonus_per_use_;
    return eff;
  }

  void push_window(bool miss) {
    uint8_t& slot = window_bits_[window_pos_];
    if (window_seen_ >= cpaat_window_) {
      if (slot) --window_misses_;
    } else {
      ++window_seen_;
    }
    slot = miss ? 1 : 0;
    if (miss) ++window_misses_;
    window_pos_ = (window_pos_ + 1) % cpaat_window_;
  }

  CacheGeometry geom_;
  Policy31Mechanisms mech_;
  bool prefetching_;
  EtrCore core_;
  PackedUsage usage_;
  std::vector<uint8_t> iqp_;
  std::vector<uint8_t> pf_cov_;

  int bonus_per_use_ = 2;
  int dead_inflation_ = 6;
  int iqp_sat_ = 3;
  int pf_easy_threshold_ = 12;
  int pf_hard_threshold_ = 0;
  int pf_easy_penalty_ = 4;
  int pf_hard_bonus_ = 4;
  uint32_t cpaat_window_ = 256;
  int cpaat_base_threshold_ = 12;
  double cpaat_pressure_scale_ = 8.0;

  std::vector<uint8_t> window_bits_;
  uint32_t window_pos_ = 0;
  uint32_t window_seen_ = 0;
  uint32_t window_misses_ = 0;
};

// effective_etr = |etr| - usage * bonus_per_use; free function mirrored by
// Policy31's victim scoring, exposed for direct testing.
inline int effective_etr(int etr_val, int usage, int bonus_per_use) {
  return std::abs(etr_val) - usage * bonus_per_use;
}

}  // namespace csim

#endif
