#ifndef CSIM_POLICIES_RDP_HPP
#define CSIM_POLICIES_RDP_HPP

#include <bit>
#include <cstdlib>
#include <vector>

#include "csim/policy.hpp"

namespace csim {

// Estimated-time-of-reuse core: a sampled reuse-distance predictor plus a
// per-line signed ETR counter aged per set. Victims are the lines whose
// predicted reuse is furthest away (largest |etr|).
//
// Structure (fixed): 2^12-entry predictor of 7-bit EWMA distances, 1 of
// every 16 sets sampled with a 16-entry history (10b partial tag, 12b
// signature, 8b timestamp), 6-bit per-set aging counter.
class EtrCore {
 public:
  static constexpr unsigned kSigBits = 12;
  static constexpr unsigned kSamplerShift = 4;   // sample sets where (set & 15) == 0
  static constexpr unsigned kSamplerAssoc = 16;
  static constexpr uint8_t kUntrained = 0xFF;

  struct SamplerEntry {
    uint16_t tag = 0;
    uint16_t sig = 0;
    uint8_t ts = 0;
    bool valid = false;
  };

  EtrCore() = default;

  void configure(const CacheGeometry& g, int etr_default, int etr_max, int granularity) {
    geom_ = g;
    etr_default_ = etr_default;
    etr_max_ = etr_max;
    granularity_ = granularity < 1 ? 1 : granularity;
    etr_.assign(g.num_lines(), 0);
    pred_.assign(size_t(1) << kSigBits, kUntrained);
    num_sampled_ = (g.num_sets + (1u << kSamplerShift) - 1) >> kSamplerShift;
    sampler_.assign(size_t(num_sampled_) * kSamplerAssoc, SamplerEntry{});
    sampler_clock_.assign(num_sampled_, 0);
    age_ctr_.assign(g.num_sets, 0);
  }

  int etr_default() const { return etr_default_; }
  int etr_max() const { return etr_max_; }

  int8_t etr(uint32_t set, uint32_t way) const { return etr_[uint64_t(set) * geom_.assoc + way]; }
  void set_etr(uint32_t set, uint32_t way, int v) {
    if (v > etr_max_) v = etr_max_;
    if (v < -etr_max_) v = -etr_max_;
    etr_[uint64_t(set) * geom_.assoc + way] = static_cast<int8_t>(v);
  }

  static uint64_t signature_of(uint64_t key) { return pc_signature(key, kSigBits); }

  // Predicted insertion ETR for a signature, in aging quanta.
  int predict(uint64_t sig) const {
    uint8_t p = pred_[sig & ((1u << kSigBits) - 1)];
    if (p == kUntrained) return etr_default_;
    int q = p / granularity_;
    return q > etr_max_ ? etr_max_ : q;
  }

  // Sampler bookkeeping + per-set aging tick. Call once per demand access.
  void observe_demand(uint32_t set, uint64_t line_addr, uint64_t sig) {
    if ((set & ((1u << kSamplerShift) - 1)) == 0) sample(set >> kSamplerShift, line_addr, sig);
    uint8_t& a = age_ctr_[set];
    if (++a >= granularity_) {
      a = 0;
      int8_t* e = &etr_[uint64_t(set) * geom_.assoc];
      for (uint32_t w = 0; w < geom_.assoc; ++w)
        if (e[w] > -etr_max_) --e[w];
    }
  }

  // Victim with the largest |etr|; ties break to the lowest way.
  int max_abs_etr_victim(uint32_t set) const {
    const int8_t* e = &etr_[uint64_t(set) * geom_.assoc];
    uint32_t best = 0;
    int best_v = std::abs(int(e[0]));
    for (uint32_t w = 1; w < geom_.assoc; ++w) {
      int v = std::abs(int(e[w]));
      if (v > best_v) {
        best_v = v;
        best = w;
      }
    }
    return static_cast<int>(best);
  }

  uint64_t state_bits() const {
    uint64_t etr_bits = std::bit_width(unsigned(2 * etr_max_));
    uint64_t bits = geom_.num_lines() * etr_bits;
    bits += (uint64_t(1) << kSigBits) * 8;                       // 7b EWMA + trained flag
    bits += uint64_t(num_sampled_) * kSamplerAssoc * (10 + kSigBits + 8);
    bits += uint64_t(num_sampled_) * 8;                          // sampler timestamp clocks
    bits += uint64_t(geom_.num_sets) * 6;                        // aging counters
    return bits;
  }

  void save(ByteWriter& w) const {
    w.u64(etr_.size());
    w.bytes(etr_.data(), etr_.size());
    w.bytes(pred_.data(), pred_.size());
    for (const SamplerEntry& e : sampler_) {
      w.u16(e.tag);
      w.u16(e.sig);
      w.u8(e.ts);
      w.boolean(e.valid);
    }
    for (uint8_t c : sampler_clock_) w.u8(c);
    for (uint8_t c : age_ctr_) w.u8(c);
  }
  void load(ByteReader& r) {
    uint64_t n = r.u64();
    etr_.assign(n, 0);
    for (auto& v : etr_) v = static_cast<int8_t>(r.u8());
    for (auto& v : pred_) v = r.u8();
    for (SamplerEntry& e : sampler_) {
      e.tag = r.u16();
      e.sig = r.u16();
      e.ts = r.u8();
      e.valid = r.boolean();
    }
    for (auto& c : sampler_clock_) c = r.u8();
    for (auto& c : age_ctr_) c = r.u8();
  }

  // Exposed for tests: the EWMA training rule, new = old + (observed-old)/2.
  void train(uint64_t sig, int observed) {
    if (observed > 127) observed = 127;
    if (observed < 0) observed = 0;
    uint8_t& p = pred_[sig & ((1u << kSigBits) - 1)];
    if (p == kUntrained) {
      p = static_cast<uint8_t>(observed);
      return;
    }
    int v = p + (observed - int(p)) / 2;
    if (v < 0) v = 0;
    if (v > 127) v = 127;
    p = static_cast<uint8_t>(v);
  }

  uint8_t raw_prediction(uint64_t sig) const { return pred_[sig & ((1u << kSigBits) - 1)]; }

 private:
  void sample(uint32_t sampler_set, uint64_t line_addr, uint64_t sig) {
    SamplerEntry* base = &sampler_[size_t(sampler_set) * kSamplerAssoc];
    uint8_t now = sampler_clock_[sampler_set];
    uint16_t tag = static_cast<uint16_t>(hash64(line_addr) >> 54);
    int slot = -1;
    for (unsigned i = 0; i < kSamplerAssoc; ++i) {
      if (base[i].valid && base[i].tag == tag) {
        uint8_t observed = static_cast<uint8_t>(now - base[i].ts);
        train(base[i].sig, observed);
        base[i].sig = static_cast<uint16_t>(sig & ((1u << kSigBits) - 1));
        base[i].ts = now;
        sampler_clock_[sampler_set] = static_cast<uint8_t>(now + 1);
        return;
      }
      if (slot < 0 && !base[i].valid) slot = static_cast<int>(i);
    }
    if (slot < 0) {
      // Replace the stalest entry.
      uint8_t best_age = 0;
      slot = 0;
      for (unsigned i = 0; i < kSamplerAssoc; ++i) {
        uint8_t age = static_cast<uint8_t>(now - base[i].ts);
        if (age > best_age) {
          best_age = age;
          slot = static_cast<int>(i);
        }
      }
    }
    base[slot] = {tag, static_cast<uint16_t>(sig & ((1u << kSigBits) - 1)), now, true};
    sampler_clock_[sampler_set] = static_cast<uint8_t>(now + 1);
  }

  CacheGeometry geom_;
  int etr_default_ = 12;
  int etr_max_ = 15;
  int granularity_ = 4;
  std::vector<int8_t> etr_;
  std::vector<uint8_t> pred_;
  std::vector<SamplerEntry> sampler_;
  std::vector<uint8_t> sampler_clock_;
  std::vector<uint8_t> age_ctr_;
  uint32_t num_sampled_ = 0;
};

// Plain reuse-distance policy. With `use_path_history` the predictor is
// indexed by the rolling pc-path signature instead of the raw pc, which
// separates calling contexts that share a memory instruction.
class RdpPolicy : public ReplacementPolicy {
 public:
  RdpPolicy(const PolicyContext& ctx, const PolicyParams& p, bool use_path_history)
      : geom_(ctx.llc), core_count_(ctx.core_count), use_path_(use_path_history) {
    core_.configure(ctx.llc, int(p.get_int("ETR_DEFAULT")), int(p.get_int("ETR_MAX")),
                    int(p.get_int("GRANULARITY")));
  }

  std::string_view name() const override { return use_path_ ? "policy61" : "rdp"; }

  void on_access(const PolicyEvent& e) override {
    core_.observe_demand(e.set, e.line_addr, signature(e));
  }

  int find_victim(std::span<const CacheLine>, const PolicyEvent& e) override {
    return core_.max_abs_etr_victim(e.set);
  }

  void update_state(const PolicyEvent& e) override {
    if (e.hit && !is_demand(e.kind)) return;
    core_.set_etr(e.set, e.way, core_.predict(signature(e)));
  }

  uint64_t state_bits() const override {
    return core_.state_bits() + (use_path_ ? 64ull * core_count_ : 0);
  }

  void save(ByteWriter& w) const override { core_.save(w); }
  void load(ByteReader& r) override { core_.load(r); }

  EtrCore& core() { return core_; }

 protected:
  uint64_t signature(const PolicyEvent& e) const {
    return EtrCore::signature_of(use_path_ ? e.path_hist : e.pc);
  }

  CacheGeometry geom_;
  uint32_t core_count_;
  bool use_path_;
  EtrCore core_;
};

}  // namespace csim

#endif
