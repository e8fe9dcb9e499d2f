#ifndef CSIM_CONFIG_HPP
#define CSIM_CONFIG_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "csim/errors.hpp"

namespace csim {

struct LevelConfig {
  uint64_t size_bytes = 0;
  uint32_t associativity = 8;
  uint32_t hit_latency_cycles = 0;

  uint32_t num_sets(uint32_t line_bytes) const {
    return static_cast<uint32_t>(size_bytes / (uint64_t(associativity) * line_bytes));
  }
};

// Memory-system configuration. Defaults are the championship-style setup:
// private L1I/L1D/L2 per core, shared LLC, next-line (L1D) and pc-stride (L2)
// prefetchers, 25.6 GB/s DRAM at a 4 GHz clock (6.4 bytes/cycle).
struct HierarchyConfig {
  uint32_t core_count = 1;
  uint32_t line_bytes = 64;
  bool prefetch_enabled = false;
  bool llc_shared = true;

  LevelConfig l1i{32 * 1024, 8, 0};
  LevelConfig l1d{48 * 1024, 12, 0};
  LevelConfig l2{512 * 1024, 8, 10};
  LevelConfig llc{2 * 1024 * 1024, 16, 40};

  uint32_t dram_latency_cycles = 200;
  double dram_bytes_per_cycle = 6.4;
  uint64_t warmup_instructions = 0;

  std::string policy = "lru";
  std::map<std::string, double> param_overrides;       // param.<NAME> keys
  std::map<std::string, bool> mechanism_flags;         // mech.<name> keys (policy31 ablation)
  uint64_t state_budget_bytes = 48 * 1024;             // per core; see guards

  uint32_t dram_transfer_cycles() const {
    double c = line_bytes / dram_bytes_per_cycle;
    uint32_t r = static_cast<uint32_t>(c + 0.5);
    return r == 0 ? 1 : r;
  }

  uint64_t budget_limit_bits() const {
    return state_budget_bytes * 8ull * core_count;
  }

  void validate() const {
    if (core_count != 1 && core_count != 4)
      throw InvalidInput("core_count must be 1 or 4");
    auto pow2 = [](uint64_t v) { return v && (v & (v - 1)) == 0; };
    for (const LevelConfig* l : {&l1i, &l1d, &l2, &llc}) {
      if (l->size_bytes % (uint64_t(l->associativity) * line_bytes) != 0)
        throw InvalidInput("cache size must be a multiple of assoc*line_bytes");
      if (!pow2(l->num_sets(line_bytes)))
        throw InvalidInput("cache set count must be a power of two");
    }
    if (!pow2(line_bytes)) throw InvalidInput("line_bytes must be a power of two");
  }

  // The 4-core championship configuration: 8 MiB shared LLC.
  static HierarchyConfig quad_core() {
    HierarchyConfig c;
    c.core_count = 4;
    c.llc.size_bytes = 8 * 1024 * 1024;
    return c;
  }

  static HierarchyConfig single_core() { return HierarchyConfig{}; }
};

namespace detail {

inline bool parse_bool(const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw InvalidInput("bad boolean value: " + v);
}

}  // namespace detail

// Textual key-value config. Keys mirror the HierarchyConfig fields:
//   core_count, line_bytes, prefetch_enabled, llc_shared,
//   l1i.size_bytes, l1i.associativity, l1i.hit_latency_cycles, (same for
//   l1d, l2, llc), dram_latency_cycles, dram_bytes_per_cycle,
//   warmup_instructions, state_budget_bytes, policy, param.<NAME>, mech.<name>
inline void apply_config_line(HierarchyConfig& c, const std::string& key,
                              const std::string& value) {
  auto level = [&](const std::string& prefix) -> LevelConfig* {
    if (key.rfind(prefix + ".", 0) != 0) return nullptr;
    if (prefix == "l1i") return &c.l1i;
    if (prefix == "l1d") return &c.l1d;
    if (prefix == "l2") return &c.l2;
    return &c.llc;
  };
  for (const char* p : {"l1i", "l1d", "l2", "llc"}) {
    if (LevelConfig* l = level(p)) {
      std::string field = key.substr(std::string(p).size() + 1);
      if (field == "size_bytes") l->size_bytes = std::stoull(value);
      else if (field == "associativity") l->associativity = std::stoul(value);
      else if (field == "hit_latency_cycles") l->hit_latency_cycles = std::stoul(value);
      else throw InvalidInput("unknown config key: " + key);
      return;
    }
  }
  if (key == "core_count") c.core_count = std::stoul(value);
  else if (key == "line_bytes") c.line_bytes = std::stoul(value);
  else if (key == "prefetch_enabled") c.prefetch_enabled = detail::parse_bool(value);
  else if (key == "llc_shared") c.llc_shared = detail::parse_bool(value);
  else if (key == "dram_latency_cycles") c.dram_latency_cycles = std::stoul(value);
  else if (key == "dram_bytes_per_cycle") c.dram_bytes_per_cycle = std::stod(value);
  else if (key == "warmup_instructions") c.warmup_instructions = std::stoull(value);
  else if (key == "state_budget_bytes") c.state_budget_bytes = std::stoull(value);
  else if (key == "policy") c.policy = value;
  else if (key.rfind("param.", 0) == 0) c.param_overrides[key.substr(6)] = std::stod(value);
  else if (key.rfind("mech.", 0) == 0) c.mechanism_flags[key.substr(5)] = detail::parse_bool(value);
  else throw InvalidInput("unknown config key: " + key);
}

inline HierarchyConfig parse_config_text(const std::string& text,
                                         HierarchyConfig base = HierarchyConfig{}) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);
    size_t eq = line.find('=');
    if (eq == std::string::npos) throw InvalidInput("config line missing '=': " + line);
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    while (!value.empty() && (value.front() == ' ' || value.front() == '\t'))
      value.erase(value.begin());
    apply_config_line(base, key, value);
  }
  base.validate();
  return base;
}

inline HierarchyConfig load_config_file(const std::string& path,
                                        HierarchyConfig base = HierarchyConfig{}) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), base);
}

// Named presets usable anywhere a config file path is accepted.
inline bool config_preset(const std::string& name, HierarchyConfig& out) {
  if (name == "crc-1core") { out = HierarchyConfig::single_core(); return true; }
  if (name == "crc-1core-pf") {
    out = HierarchyConfig::single_core();
    out.prefetch_enabled = true;
    return true;
  }
  if (name == "crc-4core") { out = HierarchyConfig::quad_core(); return true; }
  if (name == "crc-4core-pf") {
    out = HierarchyConfig::quad_core();
    out.prefetch_enabled = true;
    return true;
  }
  return false;
}

}  // namespace csim

#endif
