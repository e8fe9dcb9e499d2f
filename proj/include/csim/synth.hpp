#ifndef CSIM_SYNTH_HPP
#define CSIM_SYNTH_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "csim/errors.hpp"
#include "csim/rng.hpp"
#include "csim/trace.hpp"

namespace csim {

// Deterministic synthetic workloads. Identical spec => byte-identical trace.
enum class Generator { Loop, ScanMix, ContextSplit, Random };

struct SyntheticSpec {
  Generator generator = Generator::Loop;
  // Generator-specific named integers (missing keys fall back to defaults).
  std::map<std::string, uint64_t> params;

  uint64_t param(const std::string& name, uint64_t def) const {
    auto it = params.find(name);
    return it == params.end() ? def : it->second;
  }
  uint64_t require(const std::string& name) const {
    auto it = params.find(name);
    if (it == params.end()) throw InvalidSpec("missing generator param: " + name);
    return it->second;
  }

  std::string canonical() const {
    std::string s = generator_name(generator);
    for (const auto& [k, v] : params) s += ";" + k + "=" + std::to_string(v);
    return s;
  }

  static const char* generator_name(Generator g) {
    switch (g) {
      case Generator::Loop: return "loop";
      case Generator::ScanMix: return "scan-mix";
      case Generator::ContextSplit: return "context";
      case Generator::Random: return "random";
    }
    return "?";
  }
  static Generator generator_from_name(const std::string& n) {
    if (n == "loop") return Generator::Loop;
    if (n == "scan-mix") return Generator::ScanMix;
    if (n == "context") return Generator::ContextSplit;
    if (n == "random") return Generator::Random;
    throw InvalidSpec("unknown generator: " + n);
  }
};

// Cyclic LOAD sweep over working_set_bytes/line_bytes distinct lines from a
// single pc. The classic capacity-thrash workload when the working set is
// one line over cache capacity.
inline std::vector<MemoryAccess> gen_loop_trace(uint64_t working_set_bytes,
                                                uint64_t line_bytes, uint64_t n_accesses,
                                                uint64_t pc, uint64_t /*seed*/ = 0) {
  if (line_bytes == 0 || working_set_bytes == 0 || working_set_bytes % line_bytes != 0)
    throw InvalidSpec("loop: working_set_bytes must be a nonzero multiple of line_bytes");
  if (n_accesses < 1) throw InvalidSpec("loop: n_accesses must be >= 1");
  uint64_t lines = working_set_bytes / line_bytes;
  std::vector<MemoryAccess> out;
  out.reserve(n_accesses);
  for (uint64_t i = 0; i < n_accesses; ++i)
    out.push_back({pc, (i % lines) * line_bytes, AccessKind::Load, 0});
  return out;
}

// Hot working set revisited every round (hot_sweeps consecutive sweeps, so
// the reuse is visible even to eviction-trained predictors) interleaved with
// a never-reused streaming scan. LRU thrashes on the scan; dead-block
// predictors keep the hot set.
inline std::vector<MemoryAccess> gen_scan_mix_trace(uint64_t hot_lines, uint64_t hot_sweeps,
                                                    uint64_t scan_lines_per_round,
                                                    uint64_t n_accesses, uint64_t line_bytes,
                                                    uint64_t hot_pc, uint64_t scan_pc,
                                                    uint64_t /*seed*/ = 0) {
  if (hot_lines == 0 || scan_lines_per_round == 0 || line_bytes == 0 || hot_sweeps == 0)
    throw InvalidSpec("scan-mix: hot_lines, hot_sweeps, scan_lines and line_bytes must be nonzero");
  std::vector<MemoryAccess> out;
  out.reserve(n_accesses);
  const uint64_t scan_base = uint64_t(1) << 40;  // disjoint from the hot region
  uint64_t scan_next = 0;
  while (out.size() < n_accesses) {
    for (uint64_t s = 0; s < hot_sweeps && out.size() < n_accesses; ++s)
      for (uint64_t i = 0; i < hot_lines && out.size() < n_accesses; ++i)
        out.push_back({hot_pc, i * line_bytes, AccessKind::Load, 0});
    for (uint64_t i = 0; i < scan_lines_per_round && out.size() < n_accesses; ++i, ++scan_next)
      out.push_back({scan_pc, scan_base + scan_next * line_bytes, AccessKind::Load, 0});
  }
  return out;
}

// Two calling contexts issue loads from the SAME pc. Context A cycles a
// reused working set; context B streams fresh lines. Each burst is preceded
// by context-specific ifetch records, so a rolling path history separates
// the contexts while the raw pc cannot.
inline std::vector<MemoryAccess> gen_context_trace(uint64_t shared_pc, uint64_t ctx_a_lines,
                                                   uint64_t ctx_b_lines, uint64_t n_data,
                                                   uint64_t seed = 0, uint64_t line_bytes = 64,
                                                   uint64_t prologue_len = 4) {
  (void)seed;
  if (n_data == 0) return {};
  if (ctx_a_lines == 0 || ctx_b_lines == 0)
    throw InvalidSpec("context: ctx_a_lines and ctx_b_lines must be nonzero");
  std::vector<MemoryAccess> out;
  const uint64_t a_base = 0;
  const uint64_t b_base = uint64_t(1) << 40;
  const uint64_t a_if_pc = 0xA10000;
  const uint64_t b_if_pc = 0xB10000;
  uint64_t b_next = 0;
  uint64_t emitted = 0;
  while (emitted < n_data) {
    for (uint64_t i = 0; i < prologue_len; ++i) {
      uint64_t pc = a_if_pc + i * 64;
      out.push_back({pc, pc, AccessKind::Ifetch, 0});
    }
    for (uint64_t i = 0; i < ctx_a_lines && emitted < n_data; ++i, ++emitted)
      out.push_back({shared_pc, a_base + i * line_bytes, AccessKind::Load, 0});
    if (emitted >= n_data) break;
    for (uint64_t i = 0; i < prologue_len; ++i) {
      uint64_t pc = b_if_pc + i * 64;
      out.push_back({pc, pc, AccessKind::Ifetch, 0});
    }
    for (uint64_t i = 0; i < ctx_b_lines && emitted < n_data; ++i, ++emitted, ++b_next)
      out.push_back({shared_pc, b_base + b_next * line_bytes, AccessKind::Load, 0});
  }
  return out;
}

// Uniform random accesses over a bounded working set; used for fuzzing the
// simulator against the brute-force LRU oracle.
inline std::vector<MemoryAccess> gen_random_trace(uint64_t n, uint64_t pc_count,
                                                  uint64_t working_set_bytes,
                                                  uint64_t line_bytes, uint64_t seed,
                                                  uint64_t store_pct = 0,
                                                  uint64_t gap_max = 0) {
  if (line_bytes == 0 || working_set_bytes < line_bytes)
    throw InvalidSpec("random: working set must hold at least one line");
  if (pc_count == 0) throw InvalidSpec("random: pc_count must be >= 1");
  if (store_pct > 100) throw InvalidSpec("random: store_pct must be <= 100");
  uint64_t lines = working_set_bytes / line_bytes;
  SplitMix64 rng(seed);
  std::vector<MemoryAccess> out;
  out.reserve(n);
  for (uint64_t i = 0; i < n; ++i) {
    MemoryAccess r;
    r.pc = 0x400000 + rng.below(pc_count) * 4;
    r.addr = rng.below(lines) * line_bytes;
    r.kind = rng.below(100) < store_pct ? AccessKind::Store : AccessKind::Load;
    r.nonmem_gap = gap_max ? static_cast<uint8_t>(rng.below(gap_max + 1)) : 0;
    out.push_back(r);
  }
  return out;
}

inline std::vector<MemoryAccess> generate_trace(const SyntheticSpec& spec) {
  switch (spec.generator) {
    case Generator::Loop:
      return gen_loop_trace(spec.require("working_set_bytes"), spec.param("line_bytes", 64),
                            spec.require("n"), spec.param("pc", 0x400100),
                            spec.param("seed", 0));
    case Generator::ScanMix:
      return gen_scan_mix_trace(spec.require("hot_lines"), spec.param("hot_sweeps", 2),
                                spec.require("scan_lines"), spec.require("n"),
                                spec.param("line_bytes", 64), spec.param("hot_pc", 0x400100),
                                spec.param("scan_pc", 0x400200), spec.param("seed", 0));
    case Generator::ContextSplit:
      return gen_context_trace(spec.param("shared_pc", 0x400100), spec.require("ctx_a_lines"),
                               spec.require("ctx_b_lines"), spec.require("n"),
                               spec.param("seed", 0), spec.param("line_bytes", 64),
                               spec.param("prologue_len", 4));
    case Generator::Random:
      return gen_random_trace(spec.require("n"), spec.param("pc_count", 16),
                              spec.require("working_set_bytes"), spec.param("line_bytes", 64),
                              spec.param("seed", 0), spec.param("store_pct", 0),
                              spec.param("gap_max", 0));
  }
  throw InvalidSpec("unknown generator");
}

}  // namespace csim

#endif
