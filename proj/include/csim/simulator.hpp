#ifndef CSIM_SIMULATOR_HPP
#define CSIM_SIMULATOR_HPP

#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "csim/cache.hpp"
#include "csim/config.hpp"
#include "csim/errors.hpp"
#include "csim/guards.hpp"
#include "csim/policies/policy6x.hpp"
#include "csim/policies/registry.hpp"
#include "csim/policy.hpp"
#include "csim/prefetch.hpp"
#include "csim/trace.hpp"

namespace csim {

enum class ServicedLevel : uint8_t { L1 = 0, L2 = 1, LLC = 2, DRAM = 3 };

struct LlcEvent {
  enum class Kind : uint8_t { Hit, Miss, Fill, Evict, Writeback };
  Kind kind;
  uint32_t set = 0;
  uint32_t way = 0;
  bool bypassed = false;
};

struct AccessOutcome {
  ServicedLevel serviced_level = ServicedLevel::L1;
  bool was_prefetched_line = false;
  uint64_t cycles_charged = 0;  // penalty on top of the 1-cycle retire
  std::vector<LlcEvent> llc_events;
};

struct LevelStats {
  uint64_t hits = 0;
  uint64_t misses = 0;
  bool operator==(const LevelStats&) const = default;
};

struct WorkloadResult {
  uint64_t instructions = 0;
  uint64_t cycles = 0;
  double ipc = 0.0;
  LevelStats l1i, l1d, l2, llc;
  double llc_mpki = 0.0;
  uint64_t dram_reads = 0;
  uint64_t dram_writes = 0;
  uint64_t llc_fills = 0;
  uint64_t llc_prefetch_fills = 0;
  uint64_t llc_wb_fills = 0;
  uint64_t llc_bypasses = 0;
  uint64_t llc_dirty_evictions = 0;
  bool operator==(const WorkloadResult&) const = default;
};

// LLC lookup record for the offline oracles; the stream is independent of
// the LLC policy because the hierarchy is non-inclusive.
struct LlcAccessRecord {
  uint64_t line_addr = 0;
  PolicyAccessKind kind = PolicyAccessKind::Load;
  bool hit = false;
};

// Trace-driven cache hierarchy with a blocking timing proxy:
// cycles = instructions + per-access penalty (0 / L2 / LLC / DRAM latency,
// plus a DRAM bandwidth serialization term). One instance per run; cores are
// interleaved round-robin, one instruction slot per round.
class Simulation {
 public:
  Simulation(const HierarchyConfig& config,
             std::vector<const std::vector<MemoryAccess>*> traces, uint64_t seed = 0,
             uint64_t max_instructions = 0, std::string identity = std::string())
      : cfg_(config), traces_(std::move(traces)), max_instr_(max_instructions),
        identity_(std::move(identity)) {
    cfg_.validate();
    if (traces_.size() != cfg_.core_count)
      throw InvalidInput("need one trace per core");
    if (cfg_.core_count > 1 && !cfg_.llc_shared)
      throw InvalidInput("multi-core configurations require a shared LLC");
    bool all_empty = true;
    for (const auto* t : traces_)
      if (t && !t->empty()) all_empty = false;
    if (all_empty) throw InvalidInput("empty trace: nothing to simulate");

    line_shift_ = std::bit_width(uint64_t(cfg_.line_bytes)) - 1;
    llc_ = CacheArray(CacheGeometry::from(cfg_.llc, cfg_.line_bytes));
    cores_.resize(cfg_.core_count);
    for (CoreState& c : cores_) {
      c.l1i = CacheArray(CacheGeometry::from(cfg_.l1i, cfg_.line_bytes));
      c.l1d = CacheArray(CacheGeometry::from(cfg_.l1d, cfg_.line_bytes));
      c.l2 = CacheArray(CacheGeometry::from(cfg_.l2, cfg_.line_bytes));
    }
    dram_last_start_ = -int64_t(cfg_.dram_transfer_cycles());

    PolicyContext ctx{llc_.geometry(), cfg_.core_count, cfg_.prefetch_enabled, seed};
    PolicyParams params = make_policy_params(cfg_.policy, cfg_.param_overrides);
    policy_ = make_policy(cfg_.policy, ctx, params, cfg_.mechanism_flags);
    check_budget(*policy_, cfg_, guard_);
  }

  const GuardReport& guard_report() const { return guard_; }
  ReplacementPolicy& policy() { return *policy_; }
  const HierarchyConfig& config() const { return cfg_; }

  void set_llc_recorder(std::vector<LlcAccessRecord>* rec) { recorder_ = rec; }

  bool core_finished(uint32_t core) const {
    const CoreState& c = cores_[core];
    if (c.cursor >= traces_[core]->size()) return true;
    return max_instr_ != 0 && c.retired_instr >= max_instr_;
  }

  bool finished() const {
    for (uint32_t i = 0; i < cfg_.core_count; ++i)
      if (!core_finished(i)) return false;
    return true;
  }

  uint64_t total_cycles() const { return base_cycles_ + penalty_cycles_; }
  uint64_t slots_retired() const { return slots_; }

  // Retire one instruction slot on every unfinished core, core-id order.
  void step_round() {
    enforce_budget();
    for (uint32_t core = 0; core < cfg_.core_count; ++core) {
      if (core_finished(core)) continue;
      step_slot(core);
    }
  }

  void run() {
    enforce_budget();
    while (!finished()) step_round();
  }

  // Run until at least `instr_limit` instructions retired on core 0 (used by
  // checkpoint-interval scheduling); stops at slot boundaries.
  void run_until(uint64_t instr_limit) {
    enforce_budget();
    while (!finished() && cores_[0].retired_instr < instr_limit) step_round();
  }

  const AccessOutcome& last_outcome() const { return outcome_; }

  // One access (plus its leading non-memory bubbles) on one core.
  const AccessOutcome& step_slot(uint32_t core) {
    CoreState& c = cores_[core];
    const MemoryAccess& a = (*traces_[core])[c.cursor];
    outcome_.llc_events.clear();
    outcome_.was_prefetched_line = false;
    outcome_.cycles_charged = 0;

    c.path_hist = path_history_step(c.path_hist, a.pc);

    uint64_t pre_retired = c.retired_instr;
    uint64_t access_instr_no = pre_retired + a.nonmem_gap + 1;
    bool warm = access_instr_no > cfg_.warmup_instructions;

    uint64_t penalty = access(core, a, warm);
    outcome_.cycles_charged = penalty;

    c.retired_instr = access_instr_no;
    c.cursor++;
    slots_++;
    base_cycles_ += a.nonmem_gap + 1;
    penalty_cycles_ += penalty;

    // Post-warmup windows: instructions beyond the first warmup_instructions
    // on this core, penalties of post-warmup accesses.
    uint64_t w = cfg_.warmup_instructions;
    uint64_t lo = pre_retired > w ? pre_retired : w;
    if (c.retired_instr > lo) post_instr_ += c.retired_instr - lo;
    if (warm) {
      post_penalty_cycles_ += penalty;
      c.post_penalty += penalty;
    }
    if (c.retired_instr > w) c.post_instr = c.retired_instr - w;
    return outcome_;
  }

  // Per-core result. `cycles` is the shared cycle counter, so in multi-core
  // runs every core reports the same denominator.
  WorkloadResult result(uint32_t core = 0) const {
    const CoreState& c = cores_[core];
    WorkloadResult r;
    r.instructions = c.post_instr;
    r.cycles = post_instr_ + post_penalty_cycles_;
    r.ipc = r.cycles ? double(r.instructions) / double(r.cycles) : 0.0;
    r.l1i = c.stat_l1i;
    r.l1d = c.stat_l1d;
    r.l2 = c.stat_l2;
    r.llc = c.stat_llc;
    r.llc_mpki = r.instructions ? 1000.0 * double(c.stat_llc.misses) / double(r.instructions) : 0.0;
    r.dram_reads = c.dram_reads;
    r.dram_writes = c.dram_writes;
    r.llc_fills = c.llc_fills;
    r.llc_prefetch_fills = c.llc_prefetch_fills;
    r.llc_wb_fills = c.llc_wb_fills;
    r.llc_bypasses = c.llc_bypasses;
    r.llc_dirty_evictions = c.llc_dirty_evictions;
    return r;
  }

  std::vector<WorkloadResult> results() const {
    std::vector<WorkloadResult> out;
    for (uint32_t i = 0; i < cfg_.core_count; ++i) out.push_back(result(i));
    return out;
  }

  // Finalize guard accounting (call once after the run).
  GuardReport finish() {
    uint64_t post_total = 0;
    for (const CoreState& c : cores_) post_total += c.post_instr;
    if (post_total == 0)
      throw InvalidInput("0 instructions simulated (trace shorter than warmup?)");
    audit_write_conservation(guard_);
    return guard_;
  }

  void save_state(ByteWriter& w) const;
  void load_state(ByteReader& r);

  uint64_t fingerprint() const {
    uint64_t h = fnv1a(identity_.data(), identity_.size());
    h = fnv1a(&cfg_.core_count, sizeof cfg_.core_count, h);
    std::string pol = cfg_.policy;
    h = fnv1a(pol.data(), pol.size(), h);
    for (const auto& [k, v] : cfg_.param_overrides) {
      h = fnv1a(k.data(), k.size(), h);
      h = fnv1a(&v, sizeof v, h);
    }
    h = fnv1a(&max_instr_, sizeof max_instr_, h);
    return h;
  }

 private:
  struct CoreState {
    CacheArray l1i, l1d, l2;
    PcStridePrefetcher stride;
    uint64_t path_hist = 0;
    uint64_t cursor = 0;
    uint64_t retired_instr = 0;
    uint64_t post_instr = 0;
    uint64_t post_penalty = 0;
    LevelStats stat_l1i, stat_l1d, stat_l2, stat_llc;
    uint64_t dram_reads = 0, dram_writes = 0;
    uint64_t llc_fills = 0, llc_prefetch_fills = 0, llc_wb_fills = 0;
    uint64_t llc_bypasses = 0, llc_dirty_evictions = 0;
  };

  void enforce_budget() const {
    if (guard_.budget_bits_used > guard_.budget_bits_limit)
      throw GuardViolation("policy state budget exceeded: " +
                           std::to_string(guard_.budget_bits_used) + " bits > " +
                           std::to_string(guard_.budget_bits_limit) + " bits");
  }

  uint64_t now() const { return base_cycles_ + penalty_cycles_; }

  // DRAM channel: one line transfer per dram_transfer_cycles(); returns the
  // stall a demand read would see.
  uint64_t dram_transfer() {
    int64_t t = int64_t(now());
    int64_t earliest = dram_last_start_ + int64_t(cfg_.dram_transfer_cycles());
    int64_t wait = earliest > t ? earliest - t : 0;
    dram_last_start_ = t + wait;
    return uint64_t(wait);
  }

  // Demand access walk. Returns the penalty cycles charged.
  uint64_t access(uint32_t core, const MemoryAccess& a, bool warm) {
    CoreState& c = cores_[core];
    uint64_t line = a.addr >> line_shift_;
    bool is_ifetch = a.kind == AccessKind::Ifetch;
    CacheArray& l1 = is_ifetch ? c.l1i : c.l1d;
    LevelStats& l1_stat = is_ifetch ? c.stat_l1i : c.stat_l1d;
    PolicyAccessKind pkind = static_cast<PolicyAccessKind>(a.kind);

    // L1
    int way = l1.lookup(line);
    if (way >= 0) {
      if (warm) l1_stat.hits++;
      CacheLine& ln = l1.line(l1.set_of(line), way);
      ln.reused = true;
      if (a.kind == AccessKind::Store) ln.dirty = true;
      if (ln.filled_by_prefetch) {
        outcome_.was_prefetched_line = true;
        ln.filled_by_prefetch = false;
      }
      l1.touch(l1.set_of(line), way);
      outcome_.serviced_level = ServicedLevel::L1;
      return 0;
    }
    if (warm) l1_stat.misses++;

    bool demand_l1d_miss = !is_ifetch;

    // L2
    uint64_t penalty;
    way = c.l2.lookup(line);
    if (way >= 0) {
      if (warm) c.stat_l2.hits++;
      CacheLine& ln = c.l2.line(c.l2.set_of(line), way);
      ln.reused = true;
      if (ln.filled_by_prefetch) {
        outcome_.was_prefetched_line = true;
        ln.filled_by_prefetch = false;
      }
      c.l2.touch(c.l2.set_of(line), way);
      fill(core, l1, line, false, false, a.pc, warm);
      outcome_.serviced_level = ServicedLevel::L2;
      penalty = cfg_.l2.hit_latency_cycles;
    } else {
      if (warm) c.stat_l2.misses++;
      penalty = llc_demand(core, a, line, pkind, warm);
      fill(core, c.l2, line, false, false, a.pc, warm);
      fill(core, l1, line, false, false, a.pc, warm);
    }

    if (a.kind == AccessKind::Store) {
      uint32_t s = l1.set_of(line);
      int w2 = l1.lookup(line);
      if (w2 >= 0) l1.line(s, w2).dirty = true;
    }

    // Prefetch triggers run after the demand path completes. Both engines
    // see only the data accesses that reached L2 (i.e. L1D demand misses).
    if (cfg_.prefetch_enabled && demand_l1d_miss) {
      issue_prefetch(core, next_line_prefetch_addr(a.addr, cfg_.line_bytes), a.pc,
                     /*into_l1=*/true, warm);
      if (auto target = c.stride.on_demand_access(a.pc, a.addr))
        issue_prefetch(core, *target, a.pc, /*into_l1=*/false, warm);
    }
    return penalty;
  }

  // LLC demand access; returns penalty for the serviced level at/below LLC.
  uint64_t llc_demand(uint32_t core, const MemoryAccess& a, uint64_t line,
                      PolicyAccessKind pkind, bool warm) {
    CoreState& c = cores_[core];
    uint32_t set = llc_.set_of(line);
    int way = llc_.lookup(line);

    PolicyEvent e;
    e.cpu = core;
    e.set = set;
    e.line_addr = line;
    e.pc = a.pc;
    e.path_hist = c.path_hist;
    e.kind = pkind;
    e.hit = way >= 0;
    if (way >= 0) e.was_prefetched_line = llc_.line(set, way).filled_by_prefetch;
    policy_->on_access(e);
    if (recorder_) recorder_->push_back({line, pkind, way >= 0});

    if (way >= 0) {
      if (warm) c.stat_llc.hits++;
      outcome_.llc_events.push_back({LlcEvent::Kind::Hit, set, uint32_t(way), false});
      CacheLine& ln = llc_.line(set, way);
      ln.reused = true;
      if (ln.filled_by_prefetch) {
        outcome_.was_prefetched_line = true;
        ln.filled_by_prefetch = false;
      }
      llc_.touch(set, way);
      e.way = uint32_t(way);
      policy_->update_state(e);
      outcome_.serviced_level = ServicedLevel::LLC;
      return cfg_.llc.hit_latency_cycles;
    }

    if (warm) c.stat_llc.misses++;
    outcome_.llc_events.push_back({LlcEvent::Kind::Miss, set, PolicyEvent::kNoWay, false});
    if (warm) c.dram_reads++;
    uint64_t penalty = cfg_.dram_latency_cycles + dram_transfer();
    llc_fill(core, line, /*dirty=*/false, pkind, a.pc, c.path_hist, warm);
    outcome_.serviced_level = ServicedLevel::DRAM;
    return penalty;
  }

  // Fill into the LLC, consulting the policy when the set is full. Clean
  // fills may be bypassed; dirty writeback bypass trips the guard.
  void llc_fill(uint32_t core, uint64_t line, bool dirty, PolicyAccessKind pkind,
                uint64_t pc, uint64_t path_hist, bool warm) {
    CoreState& c = cores_[core];
    uint32_t set = llc_.set_of(line);

    PolicyEvent e;
    e.cpu = core;
    e.set = set;
    e.line_addr = line;
    e.pc = pc;
    e.path_hist = path_hist;
    e.kind = pkind;
    e.hit = false;

    int way = llc_.invalid_way(set);
    if (way < 0) {
      int choice = policy_->find_victim(llc_.set_view(set), e);
      bool bypass = choice == ReplacementPolicy::kBypass;
      check_write_bypass(pkind, dirty, bypass, guard_);
      if (bypass) {
        if (warm) c.llc_bypasses++;
        outcome_.llc_events.push_back({LlcEvent::Kind::Fill, set, PolicyEvent::kNoWay, true});
        return;
      }
      way = choice;
      CacheLine& victim = llc_.line(set, way);
      if (victim.valid) {
        PolicyEvent ev = e;
        ev.way = uint32_t(way);
        ev.victim_was_reused = victim.reused;
        ev.victim_insert_sig = victim.insert_pc_sig;
        ev.victim_line_addr = victim.line_addr;
        policy_->notify_eviction(ev);
        outcome_.llc_events.push_back({LlcEvent::Kind::Evict, set, uint32_t(way), false});
        if (victim.dirty) {
          if (warm) {
            c.llc_dirty_evictions++;
            c.dram_writes++;
          }
          guard_.dirty_evictions++;
          guard_.dram_writes++;
          dram_transfer();  // consumes channel bandwidth, no direct stall
        }
      }
    }

    CacheLine& ln = llc_.line(set, uint32_t(way));
    ln.line_addr = line;
    ln.valid = true;
    ln.dirty = dirty;
    ln.filled_by_prefetch = pkind == PolicyAccessKind::Prefetch;
    ln.reused = false;
    ln.insert_pc_sig = pc_signature(pc, 16);
    llc_.touch(set, uint32_t(way));

    if (warm) {
      c.llc_fills++;
      if (pkind == PolicyAccessKind::Prefetch) c.llc_prefetch_fills++;
      if (pkind == PolicyAccessKind::Writeback) c.llc_wb_fills++;
    }
    e.way = uint32_t(way);
    policy_->update_state(e);
    outcome_.llc_events.push_back({LlcEvent::Kind::Fill, set, uint32_t(way), false});
  }

  // Writeback arriving at the LLC from an L2 eviction: update in place on
  // hit, write-allocate on miss.
  void llc_writeback(uint32_t core, uint64_t line, bool warm) {
    uint32_t set = llc_.set_of(line);
    int way = llc_.lookup(line);
    outcome_.llc_events.push_back(
        {LlcEvent::Kind::Writeback, set, way >= 0 ? uint32_t(way) : PolicyEvent::kNoWay, false});
    if (way >= 0) {
      CacheLine& ln = llc_.line(set, way);
      ln.dirty = true;
      llc_.touch(set, way);
      PolicyEvent e;
      e.cpu = core;
      e.set = set;
      e.way = uint32_t(way);
      e.line_addr = line;
      e.kind = PolicyAccessKind::Writeback;
      e.hit = true;
      policy_->update_state(e);
      if (recorder_) recorder_->push_back({line, PolicyAccessKind::Writeback, true});
      return;
    }
    if (recorder_) recorder_->push_back({line, PolicyAccessKind::Writeback, false});
    llc_fill(core, line, /*dirty=*/true, PolicyAccessKind::Writeback, 0, 0, warm);
  }

  // Fill into a private level (L1 or L2); dirty victims write back downward.
  void fill(uint32_t core, CacheArray& level, uint64_t line, bool dirty, bool prefetched,
            uint64_t pc, bool warm) {
    CoreState& c = cores_[core];
    if (level.lookup(line) >= 0) return;
    uint32_t set = level.set_of(line);
    int way = level.invalid_way(set);
    if (way < 0) {
      way = int(level.lru_victim(set));
      CacheLine& victim = level.line(set, way);
      if (victim.valid && victim.dirty) {
        if (&level == &c.l2)
          llc_writeback(core, victim.line_addr, warm);
        else
          l2_writeback(core, victim.line_addr, warm);
      }
    }
    CacheLine& ln = level.line(set, uint32_t(way));
    ln.line_addr = line;
    ln.valid = true;
    ln.dirty = dirty;
    ln.filled_by_prefetch = prefetched;
    ln.reused = false;
    ln.insert_pc_sig = pc_signature(pc, 16);
    level.touch(set, uint32_t(way));
  }

  void l2_writeback(uint32_t core, uint64_t line, bool warm) {
    CoreState& c = cores_[core];
    uint32_t set = c.l2.set_of(line);
    int way = c.l2.lookup(line);
    if (way >= 0) {
      c.l2.line(set, way).dirty = true;
      c.l2.touch(set, way);
      return;
    }
    fill(core, c.l2, line, /*dirty=*/true, false, 0, warm);
  }

  // A prefetch is dropped if it hits at any level it could fill; otherwise it
  // fetches from DRAM (consuming channel bandwidth but stalling nothing) and
  // fills its levels tagged filled_by_prefetch. The LLC policy sees the fill
  // with kind Prefetch.
  void issue_prefetch(uint32_t core, uint64_t addr, uint64_t pc, bool into_l1, bool warm) {
    CoreState& c = cores_[core];
    uint64_t line = addr >> line_shift_;
    if (into_l1 && c.l1d.lookup(line) >= 0) return;
    if (c.l2.lookup(line) >= 0) return;
    if (llc_.lookup(line) >= 0) return;
    dram_transfer();
    llc_fill(core, line, false, PolicyAccessKind::Prefetch, pc, c.path_hist, warm);
    fill(core, c.l2, line, false, true, pc, warm);
    if (into_l1) fill(core, c.l1d, line, false, true, pc, warm);
  }

  HierarchyConfig cfg_;
  std::vector<const std::vector<MemoryAccess>*> traces_;
  uint64_t max_instr_ = 0;
  std::string identity_;
  unsigned line_shift_ = 6;

  std::vector<CoreState> cores_;
  CacheArray llc_;
  std::unique_ptr<ReplacementPolicy> policy_;
  GuardReport guard_;

  uint64_t base_cycles_ = 0;
  uint64_t penalty_cycles_ = 0;
  uint64_t post_instr_ = 0;
  uint64_t post_penalty_cycles_ = 0;
  uint64_t slots_ = 0;
  int64_t dram_last_start_ = 0;

  AccessOutcome outcome_;
  std::vector<LlcAccessRecord>* recorder_ = nullptr;
};

}  // namespace csim

#endif
