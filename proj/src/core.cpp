#include "regionsched/core.hpp"

#include <algorithm>
#include <set>

namespace rsched {

std::string to_string(CommitModel model) {
  switch (model) {
    case CommitModel::NoCommitment: return "none";
    case CommitModel::CommitOnAdmission: return "admission";
    case CommitModel::DeltaCommitment: return "delta";
  }
  return "none";
}

std::optional<CommitModel> commit_model_from_string(std::string_view name) {
  if (name == "none") return CommitModel::NoCommitment;
  if (name == "admission") return CommitModel::CommitOnAdmission;
  if (name == "delta") return CommitModel::DeltaCommitment;
  return std::nullopt;
}

const Job* Instance::find(int id) const {
  for (const auto& job : jobs) {
    if (job.id == id) return &job;
  }
  return nullptr;
}

bool Instance::satisfies_slack(const Job& job) const {
  return job.window() >= (Rat(1) + epsilon) * job.processing;
}

Instance make_instance(std::vector<Job> jobs, Rat epsilon) {
  if (epsilon <= 0) {
    throw ParamDomainError("epsilon must be positive, got " + to_string(epsilon));
  }
  std::set<int> seen;
  for (const auto& job : jobs) {
    if (job.processing <= 0) {
      throw NonPositiveProcessingError("job " + std::to_string(job.id) +
                                       ": processing time must be > 0");
    }
    if (job.weight <= 0) {
      throw NonPositiveWeightError("job " + std::to_string(job.id) +
                                   ": weight must be > 0");
    }
    if (job.deadline <= job.release) {
      throw DeadlineNotAfterReleaseError("job " + std::to_string(job.id) +
                                         ": deadline must be after release");
    }
    if (job.window() < job.processing) {
      throw InfeasibleWindowError("job " + std::to_string(job.id) +
                                  ": window shorter than processing time");
    }
    if (!seen.insert(job.id).second) {
      throw DuplicateIdError("duplicate job id " + std::to_string(job.id));
    }
  }
  Instance instance;
  instance.jobs = std::move(jobs);
  instance.epsilon = std::move(epsilon);
  for (const auto& job : instance.jobs) {
    if (!instance.satisfies_slack(job)) instance.slack_violations.push_back(job.id);
  }
  std::sort(instance.slack_violations.begin(), instance.slack_violations.end());
  return instance;
}

AlgoParams default_params(CommitModel model, Rat epsilon, std::optional<Rat> delta) {
  if (epsilon <= 0) {
    throw ParamDomainError("epsilon must be positive, got " + to_string(epsilon));
  }
  if (epsilon > 1) epsilon = 1;  // large slack runs as epsilon = 1
  if (model == CommitModel::DeltaCommitment) {
    if (!delta) throw ParamDomainError("delta-commitment needs an explicit delta");
    if (*delta <= 0 || *delta >= epsilon) {
      throw ParamDomainError("delta must satisfy 0 < delta < epsilon, got delta=" +
                             to_string(*delta) + " epsilon=" + to_string(epsilon));
    }
  } else if (delta) {
    throw ParamDomainError("delta is only a parameter of the delta-commitment model");
  }

  AlgoParams params;
  params.model = model;
  switch (model) {
    case CommitModel::NoCommitment:
      params.alpha = 1;
      params.beta = epsilon / 4;
      params.delta = epsilon / 2;
      break;
    case CommitModel::CommitOnAdmission:
      params.alpha = Rat(4) / epsilon;
      params.beta = epsilon / 8;
      params.delta = epsilon / 2;
      break;
    case CommitModel::DeltaCommitment:
      params.alpha = Rat(8) / *delta;
      params.beta = *delta / 4;
      params.delta = *delta;
      break;
  }
  return params;
}

Rat condition1_value(const Rat& alpha, const Rat& beta, const Rat& delta) {
  return (alpha - 1) / alpha * (Rat(1) + delta - beta / (Rat(1) - beta));
}

bool check_condition1(const Rat& alpha, const Rat& beta, const Rat& delta) {
  return condition1_value(alpha, beta, delta) >= 1;
}

Rat lambda_bound(const AlgoParams& params, const Rat& epsilon) {
  Rat eps = epsilon > 1 ? Rat(1) : epsilon;
  if (params.delta >= eps) {
    throw ParamDomainError("lambda undefined for delta >= epsilon");
  }
  return eps / (eps - params.delta) * (params.alpha / params.beta);
}

}  // namespace rsched
