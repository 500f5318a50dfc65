#pragma once

#include "regionsched/adversaries.hpp"
#include "regionsched/core.hpp"
#include "regionsched/verify.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rsched {

struct RatioResult {
  Rat opt{0};
  int on_time = 0;
  Rat ratio{1};        // OPT/on-time; OPT when on-time = 0 and OPT > 0; 1 when both 0
  bool flagged = false;  // true when on-time = 0 and OPT > 0
};

// Runs the engine and the oracle on the same instance. CapExceededError
// propagates when the oracle refuses.
RatioResult competitive_ratio(const Instance& instance, const AlgoParams& params);

struct ExperimentRow {
  std::int64_t instance_id = 0;  // seed
  int n = 0;
  std::string model;
  Rat alpha, beta, delta, epsilon;
  int admitted = 0;
  int on_time = 0;
  std::optional<Rat> opt;  // empty = CapExceeded
  std::optional<Rat> ratio;
  bool ratio_flagged = false;
  Rat lambda{0};
  std::optional<bool> lambda_ok;  // opt <= (lambda+1) * admitted, when opt known
  int violations = 0;             // verify_trace findings
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;  // sorted by instance id
  std::optional<Rat> max_ratio;
  std::optional<Rat> mean_ratio;
  int violation_total = 0;
  int lambda_violations = 0;
  int cap_exceeded = 0;
};

struct BenchSpec {
  int n = 10;                  // jobs per instance; n < 0 means vary by seed
  int seeds = 100;
  std::uint64_t base_seed = 0;
  Rat horizon{10};
  AlgoParams params;
  Rat epsilon{1};              // declared slack of generated instances
  bool with_oracle = true;     // compute OPT / lambda bound when the cap allows
  int threads = 0;             // 0 = hardware concurrency
};

// Seed sweep over gen_random_slack instances: run, verify, compare to OPT.
// Rows are computed independently and sorted by id, so output is
// deterministic regardless of thread count.
ExperimentReport bench_random(const BenchSpec& spec);

std::string report_to_json(const ExperimentReport& report);
std::string report_to_csv(const ExperimentReport& report);

}  // namespace rsched
