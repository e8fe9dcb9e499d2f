#ifndef CSIM_GUARDS_HPP
#define CSIM_GUARDS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "csim/config.hpp"
#include "csim/errors.hpp"
#include "csim/policy.hpp"

namespace csim {

// Always-on run verification. Two rules:
//  - the policy's metadata must fit the state budget;
//  - a dirty writeback fill may never be bypassed at the LLC (the write
//    would vanish from the system along with its DRAM traffic).
// Both are plain runtime checks; no build profile can compile them out.
struct GuardReport {
  uint64_t budget_bits_used = 0;
  uint64_t budget_bits_limit = 0;
  bool budget_overridden = false;
  uint64_t writeback_bypass_attempts = 0;
  uint64_t dirty_evictions = 0;
  uint64_t dram_writes = 0;
  bool pass = true;
  std::vector<std::string> reasons;

  void fail(const std::string& why) {
    pass = false;
    reasons.push_back(why);
  }
};

inline void check_budget(const ReplacementPolicy& policy, const HierarchyConfig& config,
                         GuardReport& report) {
  report.budget_bits_used = policy.state_bits();
  report.budget_bits_limit = config.budget_limit_bits();
  report.budget_overridden = config.state_budget_bytes != 48 * 1024;
  if (report.budget_bits_used > report.budget_bits_limit)
    report.fail("state budget exceeded: " + std::to_string(report.budget_bits_used) +
                " bits > " + std::to_string(report.budget_bits_limit) + " bits");
}

// Called on every LLC fill decision. `bypassed` is the policy's choice for
// this fill; dirty writeback bypass aborts the run.
inline void check_write_bypass(PolicyAccessKind kind, bool dirty_fill, bool bypassed,
                               GuardReport& report) {
  if (!bypassed) return;
  if (kind == PolicyAccessKind::Writeback && dirty_fill) {
    ++report.writeback_bypass_attempts;
    report.fail("policy bypassed a dirty writeback fill");
    throw GuardViolation("policy attempted to bypass a dirty writeback at the LLC");
  }
}

// End-of-run conservation audit: every dirty LLC eviction must have produced
// a DRAM write.
inline void audit_write_conservation(GuardReport& report) {
  if (report.dram_writes < report.dirty_evictions)
    report.fail("dram_writes (" + std::to_string(report.dram_writes) +
                ") < dirty LLC evictions (" + std::to_string(report.dirty_evictions) + ")");
}

}  // namespace csim

#endif
