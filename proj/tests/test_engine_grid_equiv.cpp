#include "support/grid_sim.hpp"

#include "regionsched/adversaries.hpp"
#include "regionsched/scheduler.hpp"

#include <doctest.h>

using namespace rsched;

// The grid simulator advances in fixed sub-event steps and keeps per-job
// piece lists; agreement with the event-driven engine on admissions,
// completion times and on-time counts pins both down.
TEST_CASE("event-driven engine matches the grid simulator on seeded instances") {
  RandomSlackConfig config;
  config.grid = 4;
  config.p_min_units = 1;
  config.p_max_units = 4;
  config.stretch = {Rat(1), Rat(3, 2), Rat(2)};

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    int n = 1 + static_cast<int>(seed % 10);
    Instance instance = gen_random_slack(n, Rat(1), Rat(3), seed, config);
    AlgoParams params;
    switch (seed % 3) {
      case 0: params = default_params(CommitModel::NoCommitment, Rat(1)); break;
      case 1: params = default_params(CommitModel::CommitOnAdmission, Rat(1)); break;
      default: params = default_params(CommitModel::DeltaCommitment, Rat(1), Rat(1, 2));
    }

    Trace trace = run(instance, params);
    testsupport::GridOutcome grid = testsupport::grid_simulate(instance, params);

    CAPTURE(seed);
    CHECK(static_cast<int>(grid.admitted.size()) == trace.summary.admitted);
    for (const auto& [job, at] : trace.admitted_at) {
      CHECK(grid.admitted.count(job) == 1);
    }
    REQUIRE(grid.completion.size() == trace.completion.size());
    for (const auto& [job, at] : trace.completion) {
      CHECK(grid.completion.at(job) == at);
    }
    CHECK(grid.on_time == trace.summary.completed_on_time);
  }
}

// Coarse half-unit grid over a tiny horizon: releases pile onto the same
// instants and land exactly on region boundaries, the cases where event
// coalescing and tie-breaking actually matter.
TEST_CASE("engine matches the grid simulator under heavy time collisions") {
  RandomSlackConfig config;
  config.grid = 2;
  config.p_min_units = 1;
  config.p_max_units = 3;
  config.stretch = {Rat(1), Rat(2)};

  for (std::uint64_t seed = 1000; seed < 1120; ++seed) {
    int n = 2 + static_cast<int>(seed % 11);
    Instance instance = gen_random_slack(n, Rat(1), Rat(2), seed, config);
    AlgoParams params;
    if (seed % 3 == 0) params = default_params(CommitModel::NoCommitment, Rat(1));
    else if (seed % 3 == 1) params = default_params(CommitModel::CommitOnAdmission, Rat(1));
    else params = default_params(CommitModel::DeltaCommitment, Rat(1), Rat(1, 2));

    Trace trace = run(instance, params);
    testsupport::GridOutcome grid = testsupport::grid_simulate(instance, params);

    CAPTURE(seed);
    CHECK(static_cast<int>(grid.admitted.size()) == trace.summary.admitted);
    REQUIRE(grid.completion.size() == trace.completion.size());
    for (const auto& [job, at] : trace.completion) {
      CHECK(grid.completion.at(job) == at);
    }
    CHECK(grid.on_time == trace.summary.completed_on_time);
  }
}
