#pragma once

#include "regionsched/errors.hpp"
#include "regionsched/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rsched {

enum class CommitModel {
  NoCommitment,
  CommitOnAdmission,
  DeltaCommitment,
};

std::string to_string(CommitModel model);
std::optional<CommitModel> commit_model_from_string(std::string_view name);

struct Job {
  int id = 0;
  TimePoint release;    // r_j
  Duration processing;  // p_j > 0
  TimePoint deadline;   // d_j
  Rat weight{1};        // w_j > 0

  Duration window() const { return deadline - release; }
  Duration laxity() const { return deadline - release - processing; }
};

// A validated job set. Jobs violating the declared epsilon-slack are kept
// (the lower-bound generators need near-tight jobs) and listed by id.
struct Instance {
  std::vector<Job> jobs;
  Rat epsilon{1};
  std::vector<int> slack_violations;

  const Job* find(int id) const;
  bool satisfies_slack(const Job& job) const;  // d - r >= (1+eps) p
};

// Validates jobs (p > 0, w > 0, d > r, d - r >= p, unique ids) and fills
// slack_violations. Throws the named validation errors.
Instance make_instance(std::vector<Job> jobs, Rat epsilon);

struct AlgoParams {
  Rat alpha{1};  // region size factor, >= 1
  Rat beta{1, 4};   // preemption threshold, in (0,1)
  Rat delta{1, 2};  // admission lateness guard, in (0, eps]
  CommitModel model = CommitModel::NoCommitment;
};

// Parameter choices per commitment model. epsilon > 1 is clamped to 1 here
// (and only here). delta must be supplied iff model == DeltaCommitment.
AlgoParams default_params(CommitModel model, Rat epsilon,
                          std::optional<Rat> delta = std::nullopt);

// Left-hand side of the commitment condition
//   ((alpha-1)/alpha) * (1 + delta - beta/(1-beta)) >= 1.
Rat condition1_value(const Rat& alpha, const Rat& beta, const Rat& delta);
bool check_condition1(const Rat& alpha, const Rat& beta, const Rat& delta);

// lambda = (eps/(eps-delta)) * (alpha/beta); admission bound factor.
Rat lambda_bound(const AlgoParams& params, const Rat& epsilon);

}  // namespace rsched
