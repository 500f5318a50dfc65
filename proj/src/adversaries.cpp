#include "regionsched/adversaries.hpp"

#include "regionsched/instance_io.hpp"
#include "regionsched/oracle.hpp"

#include <json.hpp>

#include <algorithm>
#include <random>

namespace rsched {

namespace {

std::vector<Rat> default_stretch() {
  std::vector<Rat> u;
  for (int k = 8; k <= 16; ++k) u.emplace_back(k, 8);  // 1 .. 2 in eighths
  return u;
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  // bound > 0; modulo bias is irrelevant here, determinism is what matters.
  return rng() % bound;
}

}  // namespace

Instance gen_random_slack(int n, const Rat& epsilon, const Rat& horizon,
                          std::uint64_t seed) {
  RandomSlackConfig config;
  return gen_random_slack(n, epsilon, horizon, seed, config);
}

Instance gen_random_slack(int n, const Rat& epsilon, const Rat& horizon,
                          std::uint64_t seed, const RandomSlackConfig& config) {
  if (n < 0) throw ParamDomainError("n must be >= 0");
  if (horizon < 0) throw ParamDomainError("horizon must be >= 0");
  std::vector<Rat> stretch = config.stretch.empty() ? default_stretch() : config.stretch;
  std::mt19937_64 rng(seed);
  Rat grid(config.grid);
  std::uint64_t horizon_units =
      static_cast<std::uint64_t>(rat_floor(horizon * Rat(config.grid)));

  std::vector<Job> jobs;
  jobs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Job job;
    job.id = i;
    job.release = Rat(draw(rng, horizon_units + 1)) / grid;
    std::uint64_t span = config.p_max_units - config.p_min_units + 1;
    job.processing = Rat(config.p_min_units + draw(rng, span)) / grid;
    const Rat& u = stretch[draw(rng, stretch.size())];
    job.deadline = job.release + (Rat(1) + epsilon) * u * job.processing;
    jobs.push_back(std::move(job));
  }
  return make_instance(std::move(jobs), epsilon);
}

Instance gen_alpha_beta_lb(const Rat& epsilon, const Rat& alpha, const Rat& beta,
                           const Rat& phi) {
  if (!(phi > 0 && phi < beta && beta < 1)) {
    throw ParamDomainError("need 0 < phi < beta < 1");
  }
  if (alpha < 1) throw ParamDomainError("need alpha >= 1");
  if (alpha < epsilon) throw ParamDomainError("need alpha >= epsilon");

  std::vector<Job> jobs;
  jobs.push_back({0, Rat(0), Rat(1), alpha + 1, Rat(1)});
  long count = rat_floor(alpha / beta).convert_to<long>();
  for (long j = 1; j <= count; ++j) {
    Job job;
    job.id = static_cast<int>(j);
    job.release = Rat(j - 1) * beta + phi;
    job.processing = beta;
    job.deadline = job.release + (Rat(1) + epsilon) * beta;
    jobs.push_back(std::move(job));
  }
  return make_instance(std::move(jobs), epsilon);
}

CommitTightFamily gen_commit_tight_family(const Rat& epsilon, const Rat& delta,
                                          const Rat& alpha, const Rat& beta, int m,
                                          const Rat& phi) {
  if (!(beta > 0 && beta < delta && delta < epsilon)) {
    throw ParamDomainError("need 0 < beta < delta < epsilon");
  }
  if (!(phi > 0 && phi < beta)) throw ParamDomainError("need 0 < phi < beta");
  if (m < 0) throw ParamDomainError("need m >= 0");
  if (alpha <= 0) throw ParamDomainError("need alpha > 0");

  // Unique integer c with 1/(beta(c+1)) < alpha <= 1/(beta c).
  Rat product = alpha * beta;
  long c = rat_floor(Rat(1) / product).convert_to<long>();
  if (c < 0 || !(Rat(1) / (beta * Rat(c + 1)) < alpha) ||
      (c > 0 && !(alpha <= Rat(1) / (beta * Rat(c))))) {
    throw ParamDomainError("no integer c satisfies the region-count equation");
  }

  std::vector<Job> jobs;
  jobs.push_back({-1, Rat(0), Rat(1), Rat(1) + epsilon, Rat(1)});
  TimePoint d0 = alpha + 1 + delta;
  jobs.push_back({0, alpha - (epsilon - delta), Rat(1), d0, Rat(1)});

  for (long i = 0; i < c; ++i) {
    Job job;
    job.id = static_cast<int>(i + 1);
    job.release = alpha + Rat(i) / Rat(c) + phi;
    job.processing = beta - phi;
    job.deadline = job.release + (Rat(1) + epsilon) * job.processing;
    jobs.push_back(std::move(job));
  }

  Rat tail_start = d0 - beta / (Rat(1) - beta);
  Rat release_offset{0};
  Rat beta_pow{1};
  Rat proc = Rat(1);
  for (int j = 1; j <= m; ++j) {
    beta_pow *= beta;
    release_offset += beta_pow;
    proc *= (beta - phi);
    Job job;
    job.id = static_cast<int>(c) + j;
    job.release = tail_start + release_offset;
    job.processing = proc;
    job.deadline = job.release + (Rat(1) + epsilon) * proc;
    jobs.push_back(std::move(job));
  }

  CommitTightFamily family;
  family.instance = make_instance(std::move(jobs), epsilon);
  family.c = c;
  return family;
}

const char* const kWaveReleaseIndexing =
    "wave i (1-indexed) releases at ((i-1)/k)*gamma";

std::vector<Instance> gen_waves(const Rat& epsilon, const Rat& gamma, int k) {
  if (!(gamma > 0 && gamma < 1)) throw ParamDomainError("need gamma in (0,1)");
  if (k < 1) throw ParamDomainError("need k >= 1");

  std::vector<Job> jobs;
  std::vector<Instance> prefixes;
  int next_id = 0;
  for (int wave = 1; wave <= k; ++wave) {
    TimePoint release = Rat(wave - 1) / Rat(k) * gamma;
    Rat proc = Rat(1, 1 << wave) * (Rat(1) - gamma) / (Rat(1) + epsilon);
    int count = 1 << wave;
    for (int j = 0; j < count; ++j) {
      jobs.push_back({next_id++, release, proc, Rat(1), Rat(1)});
    }
    prefixes.push_back(make_instance(jobs, epsilon));
  }
  return prefixes;
}

Instance gen_weighted_chain(const Rat& epsilon, const Rat& delta, int n, const Rat& c) {
  if (!(delta > 0 && delta <= epsilon && epsilon < Rat(1) + delta)) {
    throw ParamDomainError("need 0 < delta <= epsilon < 1 + delta");
  }
  if (n < 1) throw ParamDomainError("need n >= 1");
  if (c <= 0) throw ParamDomainError("need c > 0");

  TimePoint d = Rat(1) + epsilon;
  Rat shrink = (Rat(1) + delta) / (Rat(1) + epsilon);
  std::vector<Job> jobs;
  Rat proc = Rat(1);
  Rat weight = c + 1;
  for (int j = 1; j <= n; ++j) {
    jobs.push_back({j, d - (Rat(1) + epsilon) * proc, proc, d, weight});
    proc *= shrink;
    weight *= (c + 1);
  }
  return make_instance(std::move(jobs), epsilon);
}

Instance gen_unitweight_commit_lb(const Rat& epsilon) {
  if (!(epsilon > 0 && epsilon < Rat(1, 4))) {
    throw ParamDomainError("need 0 < epsilon < 1/4");
  }
  std::vector<Job> jobs;
  jobs.push_back({1, Rat(0), Rat(1), Rat(1) + epsilon, Rat(1)});
  long count = rat_floor((Rat(1) - epsilon) / epsilon).convert_to<long>();
  for (long j = 0; j < count; ++j) {
    jobs.push_back({static_cast<int>(j + 2), 2 * epsilon, epsilon, Rat(1), Rat(1)});
  }
  return make_instance(std::move(jobs), epsilon);
}

namespace {

Rat prefix_ratio(const Rat& opt, int alg) {
  if (alg > 0) return opt / alg;
  if (opt > 0) return opt;
  return Rat(1);
}

PrefixRow evaluate_prefix(const std::vector<Job>& emitted, const Rat& epsilon,
                          int level, const OnlineScheduler& scheduler) {
  PrefixRow row;
  row.level = level;
  row.jobs = static_cast<int>(emitted.size());
  Instance prefix = make_instance(emitted, epsilon);
  row.opt = max_throughput_subset(prefix).value;
  row.alg_on_time = scheduler.if_no_future_releases().on_time_count();
  row.ratio = prefix_ratio(row.opt, row.alg_on_time);
  return row;
}

}  // namespace

AdversaryOutcome gen_levels_adaptive(const Rat& epsilon, int max_levels,
                                     OnlineScheduler& scheduler) {
  if (!(epsilon > 0 && epsilon < 1)) throw ParamDomainError("need epsilon in (0,1)");
  if (max_levels < 1) throw ParamDomainError("need max_levels >= 1");

  AdversaryOutcome outcome;
  std::vector<Job> emitted;
  int next_id = 0;

  // Level 0: one tight unit job.
  Job first{next_id++, Rat(0), Rat(1), Rat(1) + epsilon, Rat(1)};
  emitted.push_back(first);
  scheduler.release(first);
  bool finished = scheduler.if_no_future_releases().completes_on_time(first.id);
  outcome.prefixes.push_back(evaluate_prefix(emitted, epsilon, 0, scheduler));

  Rat level_proc = Rat(1);
  TimePoint next_start = first.release + Rat(2, 3) * first.processing;
  long cap = rat_floor(Rat(1) / (8 * epsilon)).convert_to<long>();

  for (int level = 1; level < max_levels && finished; ++level) {
    level_proc *= 2 * epsilon;
    TimePoint release = next_start;
    finished = false;
    for (long attempt = 0; attempt < cap; ++attempt) {
      Job probe{next_id++, release, level_proc,
                release + (Rat(1) + epsilon) * level_proc, Rat(1)};
      emitted.push_back(probe);
      scheduler.release(probe);
      if (scheduler.if_no_future_releases().completes_on_time(probe.id)) {
        finished = true;
        next_start = probe.release + Rat(2, 3) * probe.processing;
        break;
      }
      release = probe.deadline;  // back-to-back windows
    }
    outcome.prefixes.push_back(evaluate_prefix(emitted, epsilon, level, scheduler));
  }

  outcome.instance = make_instance(emitted, epsilon);
  outcome.realized_ratio = Rat(1);
  for (const auto& row : outcome.prefixes) {
    if (row.ratio > outcome.realized_ratio) outcome.realized_ratio = row.ratio;
  }
  return outcome;
}

std::string adversary_outcome_to_json(const AdversaryOutcome& outcome) {
  nlohmann::ordered_json doc;
  doc["instance"] = nlohmann::ordered_json::parse(serialize_instance(outcome.instance));
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : outcome.prefixes) {
    rows.push_back({{"level", row.level},
                    {"jobs", row.jobs},
                    {"opt", to_string(row.opt)},
                    {"alg_on_time", row.alg_on_time},
                    {"ratio", to_string(row.ratio)}});
  }
  doc["prefixes"] = std::move(rows);
  doc["realized_ratio"] = to_string(outcome.realized_ratio);
  return doc.dump();
}

}  // namespace rsched
