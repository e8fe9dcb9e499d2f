#ifndef CSIM_OPT_HPP
#define CSIM_OPT_HPP

#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "csim/simulator.hpp"

namespace csim {

// Offline Belady MIN over a captured LLC demand stream, per set. Two passes:
// next-use precomputation, then the MIN schedule. On a full-set miss the
// incoming line competes with the residents: whichever of them is used
// furthest in the future is the one left out. (Allowing the incoming line to
// lose — a bypass — keeps MIN an upper bound for online policies that may
// legally bypass clean fills.)
inline uint64_t opt_schedule_hits(const std::vector<uint64_t>& line_addrs, uint32_t num_sets,
                                  uint32_t assoc) {
  const uint64_t kNever = std::numeric_limits<uint64_t>::max();
  size_t n = line_addrs.size();

  std::vector<uint64_t> next_use(n, kNever);
  {
    std::unordered_map<uint64_t, uint64_t> last_seen;
    last_seen.reserve(n * 2);
    for (size_t i = n; i-- > 0;) {
      auto it = last_seen.find(line_addrs[i]);
      next_use[i] = it == last_seen.end() ? kNever : it->second;
      last_seen[line_addrs[i]] = i;
    }
  }

  struct Resident {
    uint64_t line = 0;
    uint64_t next = 0;
  };
  std::vector<std::vector<Resident>> sets(num_sets);
  for (auto& s : sets) s.reserve(assoc);

  uint64_t hits = 0;
  for (size_t i = 0; i < n; ++i) {
    uint64_t line = line_addrs[i];
    auto& set = sets[line & (num_sets - 1)];
    bool hit = false;
    for (Resident& res : set) {
      if (res.line == line) {
        hit = true;
        res.next = next_use[i];
        break;
      }
    }
    if (hit) {
      ++hits;
      continue;
    }
    if (set.size() < assoc) {
      set.push_back({line, next_use[i]});
      continue;
    }
    size_t worst = 0;
    for (size_t w = 1; w < set.size(); ++w)
      if (set[w].next > set[worst].next) worst = w;
    if (set[worst].next >= next_use[i])
      set[worst] = {line, next_use[i]};
    // else: the incoming line is the one used furthest away; don't cache it.
  }
  return hits;
}

// Captures the LLC demand stream of a run (policy-independent for a fixed
// upper-level configuration) and returns it as line addresses.
inline std::vector<uint64_t> capture_llc_demand_stream(const HierarchyConfig& config,
                                                       const std::vector<MemoryAccess>& trace,
                                                       uint64_t seed = 0,
                                                       uint64_t max_instr = 0) {
  std::vector<LlcAccessRecord> records;
  Simulation sim(config, {&trace}, seed, max_instr);
  sim.set_llc_recorder(&records);
  sim.run();
  std::vector<uint64_t> out;
  out.reserve(records.size());
  for (const LlcAccessRecord& r : records)
    if (is_demand(r.kind)) out.push_back(r.line_addr);
  return out;
}

}  // namespace csim

#endif
