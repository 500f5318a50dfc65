// Acceptance suite: one line per criterion, exact-rational comparisons
// throughout, nonzero exit on any failure.

#include "regionsched/adversaries.hpp"
#include "regionsched/bench.hpp"
#include "regionsched/instance_io.hpp"
#include "regionsched/oracle.hpp"
#include "regionsched/scheduler.hpp"
#include "regionsched/verify.hpp"
#include "support/exhaustive.hpp"
#include "support/grid_sim.hpp"

#include <atomic>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

using namespace rsched;

namespace {

struct Tally {
  std::atomic<long> violations{0};
  std::atomic<long> decay{0};
  std::atomic<long> checked{0};
  std::mutex mutex;
  std::vector<std::string> samples;

  void absorb(const std::vector<Violation>& found) {
    checked.fetch_add(1);
    if (found.empty()) return;
    violations.fetch_add(static_cast<long>(found.size()));
    for (const auto& v : found) {
      if (v.code == "GeometricDecay") decay.fetch_add(1);
    }
    std::lock_guard<std::mutex> lock(mutex);
    for (const auto& v : found) {
      if (samples.size() < 5) samples.push_back(v.code + ": " + v.detail);
    }
  }
};

Tally g_tally;  // shared across criteria 1-4, read by criterion 5

template <typename Fn>
void parallel_seeds(std::uint64_t count, Fn&& fn) {
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (count < workers) workers = static_cast<unsigned>(count == 0 ? 1 : count);
  std::atomic<std::uint64_t> next{0};
  auto body = [&]() {
    for (;;) {
      std::uint64_t seed = next.fetch_add(1);
      if (seed >= count) return;
      fn(seed);
    }
  };
  if (workers <= 1) {
    body();
    return;
  }
  std::vector<std::thread> crew;
  for (unsigned i = 0; i < workers; ++i) crew.emplace_back(body);
  for (auto& t : crew) t.join();
}

struct Criterion {
  int id;
  std::string name;
  bool pass;
  std::string note;
  double seconds;
};

std::vector<Criterion> g_results;

template <typename Fn>
void criterion(int id, const std::string& name, double budget_seconds, Fn&& fn) {
  auto start = std::chrono::steady_clock::now();
  bool pass = false;
  std::string note;
  try {
    std::ostringstream out;
    pass = fn(out);
    note = out.str();
  } catch (const std::exception& e) {
    pass = false;
    note = std::string("exception: ") + e.what();
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_seconds > 0 && seconds > budget_seconds) {
    pass = false;
    note += " [over budget " + std::to_string(budget_seconds) + "s]";
  }
  g_results.push_back({id, name, pass, note, seconds});
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << (pass ? "[PASS]" : "[FAIL]") << " criterion " << id << ": " << name
       << " — " << note << " (" << seconds << "s)";
  std::cout << line.str() << std::endl;
}

bool criterion1(std::ostringstream& note) {
  Instance instance = gen_alpha_beta_lb(Rat(1, 2), Rat(1), Rat(1, 8), Rat(1, 100));
  AlgoParams params = default_params(CommitModel::NoCommitment, Rat(1, 2));
  Trace trace = run(instance, params);
  g_tally.absorb(verify_trace(trace, instance, params));

  OracleResult opt = max_throughput_subset(instance);
  bool pass = trace.summary.completed_on_time == 1 && opt.value == 9;
  Rat ratio = opt.value / trace.summary.completed_on_time;
  pass = pass && ratio == 9 && ratio == Rat(1) / Rat(1, 8) + 1;
  note << "on_time=" << trace.summary.completed_on_time << " opt=" << to_string(opt.value)
       << " ratio=" << to_string(ratio) << " = alpha/beta + 1";
  return pass;
}

bool criterion2(std::ostringstream& note) {
  std::atomic<long> half_violations{0};
  long runs = 0;
  for (const Rat& eps : {Rat(1, 10), Rat(1, 2), Rat(1)}) {
    AlgoParams params = default_params(CommitModel::NoCommitment, eps);
    parallel_seeds(1000, [&](std::uint64_t seed) {
      int n = static_cast<int>(seed % 41);
      Instance instance = gen_random_slack(n, eps, Rat(10), seed);
      Trace trace = run(instance, params);
      g_tally.absorb(verify_trace(trace, instance, params));
      if (2 * trace.summary.completed_on_time < trace.summary.admitted) {
        half_violations.fetch_add(1);
      }
    });
    runs += 1000;
  }
  note << runs << " runs, half-completion violations=" << half_violations.load();
  return half_violations.load() == 0 && g_tally.violations.load() == 0;
}

bool criterion3(std::ostringstream& note) {
  std::vector<AlgoParams> configs;
  for (const Rat& eps : {Rat(1, 10), Rat(1, 2), Rat(1)}) {
    configs.push_back(default_params(CommitModel::CommitOnAdmission, eps));
  }
  std::vector<Rat> eps_grid = {Rat(1, 10), Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1)};
  std::vector<std::pair<long, long>> fractions = {{1, 5}, {1, 4}, {1, 3}, {1, 2}, {3, 4}};
  std::vector<Rat> config_eps = {Rat(1, 10), Rat(1, 2), Rat(1)};
  for (const Rat& eps : eps_grid) {
    for (const auto& [num, den] : fractions) {
      Rat delta = eps * Rat(num, den);
      configs.push_back(default_params(CommitModel::DeltaCommitment, eps, delta));
      config_eps.push_back(eps);
    }
  }

  long condition_failures = 0;
  for (const auto& params : configs) {
    if (!check_condition1(params.alpha, params.beta, params.delta)) ++condition_failures;
  }

  std::atomic<long> broken{0};
  long runs = 0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const AlgoParams& params = configs[i];
    const Rat eps = config_eps[i];
    parallel_seeds(1000, [&](std::uint64_t seed) {
      int n = static_cast<int>(seed % 21);
      Instance instance = gen_random_slack(n, eps, Rat(10), seed);
      Trace trace = run(instance, params);
      g_tally.absorb(verify_trace(trace, instance, params));
      if (!verify_commitments(trace, params).empty()) broken.fetch_add(1);
    });
    runs += 1000;
  }
  note << configs.size() << " parameterizations x 1000 runs (total " << runs
       << "), broken commitments=" << broken.load()
       << ", condition1 failures=" << condition_failures;
  return broken.load() == 0 && condition_failures == 0 && g_tally.violations.load() == 0;
}

bool criterion4(std::ostringstream& note) {
  std::atomic<long> bound_violations{0};
  std::atomic<long> cap_exceeded{0};
  const std::vector<Rat> eps_cycle = {Rat(1, 10), Rat(1, 2), Rat(1)};
  parallel_seeds(500, [&](std::uint64_t seed) {
    int n = 1 + static_cast<int>(seed % 14);
    const Rat& eps = eps_cycle[seed % 3];
    Instance instance = gen_random_slack(n, eps, Rat(8), seed);
    Rat opt;
    try {
      opt = max_throughput_subset(instance).value;
    } catch (const CapExceededError&) {
      cap_exceeded.fetch_add(1);
      return;
    }
    for (int m = 0; m < 3; ++m) {
      AlgoParams params;
      if (m == 0) params = default_params(CommitModel::NoCommitment, eps);
      else if (m == 1) params = default_params(CommitModel::CommitOnAdmission, eps);
      else params = default_params(CommitModel::DeltaCommitment, eps, eps / 2);
      Trace trace = run(instance, params);
      g_tally.absorb(verify_trace(trace, instance, params));
      Rat lambda = lambda_bound(params, eps);
      if (!(opt <= (lambda + 1) * trace.summary.admitted)) bound_violations.fetch_add(1);
    }
  });
  note << "500 instances x 3 models, bound violations=" << bound_violations.load()
       << ", cap_exceeded=" << cap_exceeded.load();
  return bound_violations.load() == 0 && cap_exceeded.load() == 0 &&
         g_tally.violations.load() == 0;
}

bool criterion5(std::ostringstream& note) {
  note << "decay violations across " << g_tally.checked.load()
       << " verified traces=" << g_tally.decay.load();
  if (g_tally.violations.load() > 0) {
    std::lock_guard<std::mutex> lock(g_tally.mutex);
    for (const auto& sample : g_tally.samples) note << " | " << sample;
  }
  return g_tally.decay.load() == 0 && g_tally.violations.load() == 0;
}

bool criterion6(std::ostringstream& note) {
  RandomSlackConfig config;
  config.grid = 4;
  config.p_min_units = 1;
  config.p_max_units = 4;
  config.stretch = {Rat(1), Rat(3, 2), Rat(2)};

  std::atomic<long> mismatches{0};
  parallel_seeds(100, [&](std::uint64_t seed) {
    int n = 1 + static_cast<int>(seed % 12);
    Instance instance = gen_random_slack(n, Rat(1), Rat(3), seed, config);
    AlgoParams params;
    if (seed % 3 == 0) params = default_params(CommitModel::NoCommitment, Rat(1));
    else if (seed % 3 == 1) params = default_params(CommitModel::CommitOnAdmission, Rat(1));
    else params = default_params(CommitModel::DeltaCommitment, Rat(1), Rat(1, 2));

    Trace trace = run(instance, params);
    testsupport::GridOutcome grid = testsupport::grid_simulate(instance, params);
    bool same = static_cast<int>(grid.admitted.size()) == trace.summary.admitted &&
                grid.on_time == trace.summary.completed_on_time &&
                grid.completion.size() == trace.completion.size();
    if (same) {
      for (const auto& [job, at] : trace.completion) {
        auto it = grid.completion.find(job);
        if (it == grid.completion.end() || it->second != at) same = false;
      }
      for (const auto& [job, at] : trace.admitted_at) {
        if (!grid.admitted.count(job)) same = false;
      }
    }
    if (!same) mismatches.fetch_add(1);
  });
  note << "100 instances, mismatches=" << mismatches.load();
  return mismatches.load() == 0;
}

bool criterion7(std::ostringstream& note) {
  std::atomic<long> mismatches{0};
  parallel_seeds(200, [&](std::uint64_t seed) {
    int n = 1 + static_cast<int>(seed % 10);
    Rat eps = seed % 2 == 0 ? Rat(1, 2) : Rat(1);
    Instance instance = gen_random_slack(n, eps, Rat(5), seed);
    OracleResult pruned = max_throughput_subset(instance);
    OracleResult brute = testsupport::exhaustive_max_subset(instance);
    bool ok = pruned.value == brute.value;
    std::vector<Job> winners;
    for (const auto& job : instance.jobs) {
      for (int id : pruned.subset) {
        if (job.id == id) winners.push_back(job);
      }
    }
    ok = ok && witness_valid(winners, pruned.witness);
    if (!ok) mismatches.fetch_add(1);
  });
  note << "200 instances, mismatches=" << mismatches.load();
  return mismatches.load() == 0;
}

bool criterion8(std::ostringstream& note) {
  Rat eps(1, 16);
  AlgoParams params = default_params(CommitModel::NoCommitment, eps);
  RegionScheduler scheduler(params, eps);
  AdversaryOutcome outcome = gen_levels_adaptive(eps, 4, scheduler);
  note << "realized prefix ratio=" << to_string(outcome.realized_ratio) << " over "
       << outcome.prefixes.size() << " prefixes (" << outcome.instance.jobs.size()
       << " jobs)";
  return outcome.realized_ratio >= 2;
}

bool criterion9(std::ostringstream& note) {
  long points = 0;
  long failures = 0;

  // Waves: per-wave volume and laxity identities.
  for (const Rat& eps : {Rat(1, 10), Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1)}) {
    for (const Rat& gamma : {Rat(1, 4), Rat(1, 2), Rat(3, 4)}) {
      for (int k : {1, 3}) {
        ++points;
        auto prefixes = gen_waves(eps, gamma, k);
        const Instance& full = prefixes.back();
        bool ok = static_cast<int>(prefixes.size()) == k;
        for (int wave = 1; wave <= k && ok; ++wave) {
          Rat release = Rat(wave - 1) / Rat(k) * gamma;
          Rat volume{0};
          long count = 0;
          for (const auto& job : full.jobs) {
            if (job.release == release) {
              volume += job.processing;
              ++count;
              if (!(job.laxity() >= eps * job.processing)) ok = false;
            }
          }
          if (count != (1L << wave)) ok = false;
          if (volume != (Rat(1) - gamma) / (Rat(1) + eps)) ok = false;
          if (!(volume <= Rat(1) - gamma)) ok = false;
        }
        if (!ok) ++failures;
      }
    }
  }

  // Weighted chain: exact processing ratio, weights, geometric partial sum.
  for (const Rat& eps : {Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1)}) {
    for (const auto& frac : {Rat(1, 4), Rat(1, 2), Rat(3, 4)}) {
      Rat delta = eps * frac;
      for (const Rat& c : {Rat(2), Rat(5)}) {
        ++points;
        int n = 20;
        Instance chain = gen_weighted_chain(eps, delta, n, c);
        Rat shrink = (Rat(1) + delta) / (Rat(1) + eps);
        bool ok = static_cast<int>(chain.jobs.size()) == n;
        Rat proc{1}, weight = c + 1, total{0};
        for (int j = 1; j <= n && ok; ++j) {
          const Job* job = chain.find(j);
          if (!job || job->processing != proc || job->weight != weight ||
              job->deadline != Rat(1) + eps ||
              job->deadline - job->release != (Rat(1) + eps) * proc) {
            ok = false;
            break;
          }
          total += proc;
          proc *= shrink;
          weight *= (c + 1);
        }
        if (ok && total != (Rat(1) - proc) / (Rat(1) - shrink)) ok = false;
        if (ok && delta < eps && !(total < (Rat(1) + eps) / (eps - delta))) ok = false;
        if (!ok) ++failures;
      }
    }
  }

  // Commitment-squeeze family: the region-count integer and the construction
  // formulas hold exactly.
  for (const Rat& eps : {Rat(1, 2), Rat(3, 4), Rat(1)}) {
    for (const auto& frac : {Rat(1, 3), Rat(1, 2)}) {
      Rat delta = eps * frac;
      for (const Rat& alpha : {Rat(8) / delta, Rat(2) / delta}) {
        for (const auto& beta_frac : {Rat(1, 4), Rat(1, 8)}) {
          Rat beta = delta * beta_frac;
          ++points;
          int m = 3;
          Rat phi = beta / 1000;
          CommitTightFamily family =
              gen_commit_tight_family(eps, delta, alpha, beta, m, phi);
          const Instance& instance = family.instance;
          long c = family.c;
          bool ok = (Rat(1) / (beta * Rat(c + 1)) < alpha) &&
                    (c == 0 || alpha <= Rat(1) / (beta * Rat(c)));
          ok = ok && static_cast<long>(instance.jobs.size()) == 2 + c + m;
          for (long i = 0; i < c && ok; ++i) {
            const Job* job = instance.find(static_cast<int>(i + 1));
            if (!job || job->release != alpha + Rat(i) / Rat(c) + phi ||
                job->processing != beta - phi) {
              ok = false;
            }
          }
          Rat tail_release = alpha + 1 + delta - beta / (Rat(1) - beta);
          Rat beta_pow{1}, proc{1};
          for (int j = 1; j <= m && ok; ++j) {
            beta_pow *= beta;
            proc *= (beta - phi);
            tail_release += beta_pow;
            const Job* job = instance.find(static_cast<int>(c + j));
            if (!job || job->release != tail_release || job->processing != proc ||
                job->deadline != job->release + (Rat(1) + eps) * proc) {
              ok = false;
            }
          }
          if (!ok) ++failures;
        }
      }
    }
  }

  note << points << " parameter points, failures=" << failures;
  return failures == 0 && points >= 60;
}

bool criterion10(std::ostringstream& note) {
  BenchSpec spec;
  spec.n = 10;
  spec.seeds = 60;
  spec.base_seed = 5;
  spec.epsilon = Rat(1, 2);
  spec.params = default_params(CommitModel::NoCommitment, Rat(1, 2));
  spec.threads = 2;
  std::string first = report_to_json(bench_random(spec));
  std::string second = report_to_json(bench_random(spec));
  bool bench_same = first == second;

  Instance instance = gen_random_slack(20, Rat(1, 2), Rat(10), 7);
  AlgoParams params = default_params(CommitModel::CommitOnAdmission, Rat(1, 2));
  bool trace_same = trace_to_json(run(instance, params)) == trace_to_json(run(instance, params));

  note << "bench identical=" << (bench_same ? "yes" : "no")
       << ", trace identical=" << (trace_same ? "yes" : "no");
  return bench_same && trace_same;
}

}  // namespace

int main() {
  criterion(1, "alpha/beta construction ratio", 1.0, criterion1);
  criterion(2, "half-completion without commitment", 60.0, criterion2);
  criterion(3, "commitment safety", 120.0, criterion3);
  criterion(4, "lambda+1 admission bound", 300.0, criterion4);
  criterion(5, "interruption-tree decay", 0.0, criterion5);
  criterion(6, "engine vs grid-simulator equivalence", 0.0, criterion6);
  criterion(7, "oracle vs exhaustive enumeration", 60.0, criterion7);
  criterion(8, "adaptive levels adversary", 0.0, criterion8);
  criterion(9, "construction fidelity", 0.0, criterion9);
  criterion(10, "bench determinism", 0.0, criterion10);

  int failed = 0;
  for (const auto& result : g_results) {
    if (!result.pass) ++failed;
  }
  if (failed == 0) {
    std::cout << "all 10 acceptance criteria passed" << std::endl;
    return 0;
  }
  std::cout << failed << " acceptance criteria failed" << std::endl;
  return 1;
}
