#pragma once

#include "regionsched/core.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rsched {

struct EdfSegment {
  int job = 0;
  TimePoint start;
  TimePoint end;
};

struct EdfResult {
  bool feasible = false;
  std::vector<EdfSegment> schedule;  // witness; meaningful when feasible
  std::map<int, TimePoint> completion;
};

// Preemptive earliest-deadline-first on one machine. Feasible iff every job
// completes by its deadline; EDF is exact for this question, so it backs
// every optimum the harness computes.
EdfResult edf_schedule(const std::vector<Job>& jobs);
bool edf_feasible(const std::vector<Job>& jobs);

// Checks a witness against the jobs it claims to schedule: disjoint segments,
// per-job volume exactly p within [r, d].
bool witness_valid(const std::vector<Job>& jobs, const std::vector<EdfSegment>& witness);

struct OracleResult {
  bool weighted = false;
  Rat value{0};             // count, or total weight in weighted mode
  std::vector<int> subset;  // sorted ids
  std::vector<EdfSegment> witness;
};

int oracle_cap_from_env();  // default 22, env REGION_SCHED_ORACLE_CAP overrides

// Exact maximum-cardinality (or maximum-weight) feasible subset by pruned
// subset search. The full set is tested first; past that, instances larger
// than `cap` raise CapExceededError.
OracleResult max_throughput_subset(const Instance& instance, bool weighted = false,
                                   std::optional<int> cap = std::nullopt);

std::string oracle_result_to_json(const OracleResult& result);

}  // namespace rsched
