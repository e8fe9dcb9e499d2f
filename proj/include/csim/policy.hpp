#ifndef CSIM_POLICY_HPP
#define CSIM_POLICY_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "csim/binio.hpp"
#include "csim/cache.hpp"
#include "csim/params.hpp"

namespace csim {

enum class PolicyAccessKind : uint8_t { Load = 0, Store = 1, Ifetch = 2, Prefetch = 3, Writeback = 4 };

inline bool is_demand(PolicyAccessKind k) {
  return k == PolicyAccessKind::Load || k == PolicyAccessKind::Store ||
         k == PolicyAccessKind::Ifetch;
}

struct PolicyEvent {
  static constexpr uint32_t kNoWay = 0xFFFFFFFF;

  uint32_t cpu = 0;
  uint32_t set = 0;
  uint32_t way = kNoWay;
  uint64_t line_addr = 0;
  uint64_t pc = 0;
  uint64_t path_hist = 0;   // per-core rolling rotate-xor pc history
  PolicyAccessKind kind = PolicyAccessKind::Load;
  bool hit = false;
  bool was_prefetched_line = false;  // valid on hits
  // Eviction notifications only:
  bool victim_was_reused = false;
  uint64_t victim_insert_sig = 0;
  uint64_t victim_line_addr = 0;
};

// LLC replacement policy interface. For each LLC access the simulator calls,
// in order:
//   1. on_access(e)      every demand lookup, hit or miss (not prefetch/wb)
//   2. find_victim(...)  misses that must allocate into a full set; may
//                        return kBypass (legal for clean fills only)
//   3. notify_eviction(e) if a valid line was displaced
//   4. update_state(e)   every hit (e.hit) and every completed fill (!e.hit)
// Policies must be deterministic given (seed, params) and O(assoc) per event.
class ReplacementPolicy {
 public:
  static constexpr int kBypass = -1;

  virtual ~ReplacementPolicy() = default;

  virtual std::string_view name() const = 0;

  virtual void on_access(const PolicyEvent&) {}
  virtual int find_victim(std::span<const CacheLine> set, const PolicyEvent& e) = 0;
  virtual void notify_eviction(const PolicyEvent&) {}
  virtual void update_state(const PolicyEvent& e) = 0;

  // Total policy-metadata bits for the configured geometry, excluding the
  // cache data/tag arrays themselves.
  virtual uint64_t state_bits() const = 0;

  virtual void save(ByteWriter&) const = 0;
  virtual void load(ByteReader&) = 0;
};

struct PolicyContext {
  CacheGeometry llc;
  uint32_t core_count = 1;
  bool prefetch_enabled = false;
  uint64_t seed = 0;
};

}  // namespace csim

#endif
