#include "regionsched/oracle.hpp"

#include "regionsched/adversaries.hpp"
#include "support/exhaustive.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace rsched;

TEST_CASE("edf feasibility basics") {
  CHECK(edf_feasible({{0, Rat(0), Rat(1), Rat(1), Rat(1)}}));
  CHECK(!edf_feasible({{0, Rat(0), Rat(1), Rat(1), Rat(1)},
                       {1, Rat(0), Rat(1), Rat(1), Rat(1)}}));
  CHECK(edf_feasible({}));

  EdfResult witness = edf_schedule({{0, Rat(0), Rat(1), Rat(2), Rat(1)},
                                    {1, Rat(1, 2), Rat(1, 4), Rat(1), Rat(1)}});
  CHECK(witness.feasible);
  CHECK(witness_valid({{0, Rat(0), Rat(1), Rat(2), Rat(1)},
                       {1, Rat(1, 2), Rat(1, 4), Rat(1), Rat(1)}},
                      witness.schedule));
  // Preemption: job 1 has the earlier deadline and cuts job 0 in half.
  CHECK(witness.completion.at(1) == Rat(3, 4));
  CHECK(witness.completion.at(0) == Rat(5, 4));
}

TEST_CASE("the full alpha/beta construction is EDF-feasible") {
  Instance instance = gen_alpha_beta_lb(Rat(1, 2), Rat(1), Rat(1, 8), Rat(1, 100));
  EdfResult result = edf_schedule(instance.jobs);
  CHECK(result.feasible);
  CHECK(witness_valid(instance.jobs, result.schedule));
  // Job 0 completes exactly at its deadline alpha + 1 = 2.
  CHECK(result.completion.at(0) == Rat(2));
}

TEST_CASE("subset search: trivial and construction values") {
  CHECK(max_throughput_subset(make_instance({}, Rat(1))).value == 0);

  Instance squeeze = gen_alpha_beta_lb(Rat(1, 2), Rat(1), Rat(1, 8), Rat(1, 100));
  OracleResult opt = max_throughput_subset(squeeze);
  CHECK(opt.value == 9);  // floor(alpha/beta) + 1
  CHECK(opt.subset.size() == 9);
  CHECK(witness_valid(squeeze.jobs, opt.witness));
}

TEST_CASE("pruned search equals exhaustive enumeration") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Instance instance = gen_random_slack(8, Rat(1, 2), Rat(4), seed);
    OracleResult pruned = max_throughput_subset(instance);
    OracleResult brute = testsupport::exhaustive_max_subset(instance);
    CHECK(pruned.value == brute.value);
    std::vector<Job> winners;
    for (const auto& job : instance.jobs) {
      for (int id : pruned.subset) {
        if (job.id == id) winners.push_back(job);
      }
    }
    CHECK(witness_valid(winners, pruned.witness));
  }
}

TEST_CASE("weighted mode prefers heavy jobs") {
  Instance instance = make_instance({{0, Rat(0), Rat(1), Rat(1), Rat(10)},
                                     {1, Rat(0), Rat(1, 2), Rat(1), Rat(1)},
                                     {2, Rat(0), Rat(1, 2), Rat(1), Rat(1)}},
                                    Rat(1));
  OracleResult by_count = max_throughput_subset(instance, false);
  CHECK(by_count.value == 2);
  OracleResult by_weight = max_throughput_subset(instance, true);
  CHECK(by_weight.value == 10);
  CHECK(by_weight.subset == std::vector<int>{0});
  OracleResult brute = testsupport::exhaustive_max_subset(instance, true);
  CHECK(by_weight.value == brute.value);
}

TEST_CASE("weighted mode on the weighted chain picks the heavy antichain") {
  // Chain jobs share deadline 1+eps with tight windows; i and j can coexist
  // iff ((1+delta)/(1+eps))^(j-i) <= eps. At eps=1/2, delta=1/4 that needs a
  // gap of 4, so n=6 admits pairs like {2,6}; weights 3^j make {2,6} optimal.
  Instance chain = gen_weighted_chain(Rat(1, 2), Rat(1, 4), 6, Rat(2));
  OracleResult heavy = max_throughput_subset(chain, true);
  CHECK(heavy.subset == std::vector<int>{2, 6});
  CHECK(heavy.value == Rat(9 + 729));
  OracleResult brute = testsupport::exhaustive_max_subset(chain, true);
  CHECK(heavy.value == brute.value);
  // Cardinality mode can do no better than one such pair.
  CHECK(max_throughput_subset(chain, false).value == 2);
}

TEST_CASE("monotonicity: dropping a job never helps, adding never hurts") {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    Instance instance = gen_random_slack(7, Rat(1), Rat(3), seed);
    Rat full = max_throughput_subset(instance).value;
    std::vector<Job> fewer(instance.jobs.begin(), instance.jobs.end() - 1);
    Rat dropped = max_throughput_subset(make_instance(fewer, instance.epsilon)).value;
    CHECK(dropped <= full);
    CHECK(full <= dropped + 1);
  }
}

TEST_CASE("cap: infeasible large instances are refused, short-circuit is not") {
  std::vector<Job> crowd;
  for (int i = 0; i < 24; ++i) crowd.push_back({i, Rat(0), Rat(1), Rat(1), Rat(1)});
  Instance jam = make_instance(crowd, Rat(1));
  CHECK_THROWS_AS(max_throughput_subset(jam), CapExceededError);
  CHECK(max_throughput_subset(jam, false, 24).value == 1);

  // A feasible 30-job set resolves through the full-set short-circuit.
  std::vector<Job> easy;
  for (int i = 0; i < 30; ++i) {
    easy.push_back({i, Rat(i), Rat(1, 2), Rat(i) + Rat(2), Rat(1)});
  }
  CHECK(max_throughput_subset(make_instance(easy, Rat(1))).value == 30);
}

TEST_CASE("oracle cap env override") {
  CHECK(oracle_cap_from_env() == 22);
  setenv("REGION_SCHED_ORACLE_CAP", "5", 1);
  CHECK(oracle_cap_from_env() == 5);
  unsetenv("REGION_SCHED_ORACLE_CAP");
  CHECK(oracle_cap_from_env() == 22);
}
