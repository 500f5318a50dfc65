#pragma once

#include "regionsched/core.hpp"
#include "regionsched/scheduler.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rsched {

// Seeded epsilon-slack instance source used by bench and the test suites.
// All draws land on a denominator grid so the whole engine stays on small
// rationals; every emitted job satisfies d - r = (1+eps) * u * p with u >= 1.
struct RandomSlackConfig {
  std::uint64_t grid = 8;          // denominators divide this
  std::uint64_t p_min_units = 1;   // processing in [p_min, p_max] / grid
  std::uint64_t p_max_units = 32;
  std::vector<Rat> stretch;        // u choices; defaults to {1, 9/8, ..., 2}
};

Instance gen_random_slack(int n, const Rat& epsilon, const Rat& horizon,
                          std::uint64_t seed);
Instance gen_random_slack(int n, const Rat& epsilon, const Rat& horizon,
                          std::uint64_t seed, const RandomSlackConfig& config);

// One long job plus floor(alpha/beta) tight jobs of size beta released phi
// after the long job's region start; the region algorithm keeps only job 0
// while the optimum finishes everything.
Instance gen_alpha_beta_lb(const Rat& epsilon, const Rat& alpha, const Rat& beta,
                           const Rat& phi);

// The I_m(c) family squeezing a committed job between a blocking sequence
// B(c) and a geometric tail G(m); c is the unique integer with
// 1/(beta(c+1)) < alpha <= 1/(beta c).
struct CommitTightFamily {
  Instance instance;
  long c = 0;
};
CommitTightFamily gen_commit_tight_family(const Rat& epsilon, const Rat& delta,
                                          const Rat& alpha, const Rat& beta, int m,
                                          const Rat& phi);

// Wave i (1-indexed) has 2^i jobs released at ((i-1)/k)*gamma, all with
// deadline 1 and processing (1/2^i)*(1-gamma)/(1+eps). One instance per
// prefix of waves; the indexing choice is documented in the emitted header.
std::vector<Instance> gen_waves(const Rat& epsilon, const Rat& gamma, int k);
extern const char* const kWaveReleaseIndexing;

// Weighted chain with common deadline 1+eps: job j+1 is released exactly at
// the latest commitment time of job j, weights grow as (c+1)^j.
Instance gen_weighted_chain(const Rat& epsilon, const Rat& delta, int n, const Rat& c);

// One unit job followed at t = 2*eps by floor((1-eps)/eps) jobs of size eps
// and deadline 1. Requires eps < 1/4.
Instance gen_unitweight_commit_lb(const Rat& epsilon);

// Adaptive levels adversary. Level 0 is a single tight unit job; level i+1
// releases jobs of size 2*eps*p_i with back-to-back tight windows, one at a
// time, watching the counterfactual "does the scheduler finish this job if
// nothing else arrives". On the first yes it moves to the next level at
// r + (2/3)p of that job; a level is capped at floor(1/(8 eps)) releases.
struct PrefixRow {
  int level = 0;
  int jobs = 0;          // jobs released so far
  Rat opt{0};            // exact optimum on the prefix instance
  int alg_on_time = 0;   // counterfactual on-time count at this point
  Rat ratio{1};
};

struct AdversaryOutcome {
  Instance instance;  // full release history
  std::vector<PrefixRow> prefixes;
  Rat realized_ratio{1};
};

AdversaryOutcome gen_levels_adaptive(const Rat& epsilon, int max_levels,
                                     OnlineScheduler& scheduler);

std::string adversary_outcome_to_json(const AdversaryOutcome& outcome);

}  // namespace rsched
