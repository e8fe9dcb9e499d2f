#ifndef CSIM_METRICS_HPP
#define CSIM_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "csim/errors.hpp"
#include "csim/simulator.hpp"

namespace csim {

inline double speedup(double ipc_policy, double ipc_lru) {
  if (ipc_lru <= 0.0)
    throw MetricsError(MetricsError::Kind::InvalidBaseline, "baseline IPC must be positive");
  return ipc_policy / ipc_lru;
}

// Geometric mean computed in log space.
inline double geomean(const std::vector<double>& values) {
  if (values.empty())
    throw MetricsError(MetricsError::Kind::EmptyInput, "geomean of an empty set");
  double acc = 0.0;
  for (double v : values) {
    if (v <= 0.0)
      throw MetricsError(MetricsError::Kind::NonPositive, "geomean requires positive values");
    acc += std::log(v);
  }
  return std::exp(acc / double(values.size()));
}

// Multi-core workload speedup: arithmetic-mean IPC over cores that retired
// instructions, normalized to the same mean under the LRU baseline.
inline double mean_ipc(const std::vector<WorkloadResult>& per_core) {
  double sum = 0.0;
  uint64_t counted = 0;
  for (const WorkloadResult& r : per_core) {
    if (r.instructions == 0) continue;  // idle core, excluded from the mean
    sum += r.ipc;
    ++counted;
  }
  if (counted == 0)
    throw MetricsError(MetricsError::Kind::EmptyInput, "no core retired instructions");
  return sum / double(counted);
}

inline double multicore_speedup(const std::vector<WorkloadResult>& policy_cores,
                                const std::vector<WorkloadResult>& lru_cores) {
  double base = mean_ipc(lru_cores);
  if (base <= 0.0)
    throw MetricsError(MetricsError::Kind::InvalidBaseline, "baseline mean IPC must be positive");
  return mean_ipc(policy_cores) / base;
}

struct WorkloadRow {
  std::string workload;
  std::string config;
  uint64_t horizon = 0;
  double ipc_lru = 0.0;
  double ipc_policy = 0.0;
  double speedup = 0.0;
};

struct SuiteResult {
  std::vector<WorkloadRow> rows;  // canonical order: (workload, config)
  double suite_geomean_speedup = 0.0;
  double fitness = 0.0;
  std::vector<std::string> guard_verdicts;

  std::vector<std::string> config_names() const {
    std::vector<std::string> names;
    for (const WorkloadRow& r : rows)
      if (std::find(names.begin(), names.end(), r.config) == names.end())
        names.push_back(r.config);
    return names;
  }

  double config_geomean(const std::string& config) const {
    std::vector<double> v;
    for (const WorkloadRow& r : rows)
      if (r.config == config) v.push_back(r.speedup);
    return geomean(v);
  }
};

// The evolution objective: arithmetic mean of per-config suite geomeans.
inline double fitness_of(const SuiteResult& suite) {
  std::vector<std::string> configs = suite.config_names();
  if (configs.empty())
    throw MetricsError(MetricsError::Kind::EmptyInput, "fitness over an empty suite");
  double sum = 0.0;
  for (const std::string& c : configs) sum += suite.config_geomean(c);
  return sum / double(configs.size());
}

// Memory-intensive filter used for suite curation: keep workloads whose LLC
// MPKI under LRU exceeds the threshold.
inline bool mpki_filter(const WorkloadResult& lru_result, double threshold = 1.0) {
  return lru_result.llc_mpki > threshold;
}

// CSV with fixed column order; doubles printed with %.17g so downstream
// recomputation round-trips exactly.
inline std::string suite_csv(const SuiteResult& suite) {
  std::string out = "workload,config,horizon,ipc_lru,ipc_policy,speedup\n";
  char buf[160];
  for (const WorkloadRow& r : suite.rows) {
    snprintf(buf, sizeof buf, "%s,%s,%llu,%.17g,%.17g,%.17g\n", r.workload.c_str(),
             r.config.c_str(), static_cast<unsigned long long>(r.horizon), r.ipc_lru,
             r.ipc_policy, r.speedup);
    out += buf;
  }
  return out;
}

}  // namespace csim

#endif
