#include "regionsched/oracle.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>

namespace rsched {

EdfResult edf_schedule(const std::vector<Job>& jobs) {
  EdfResult result;
  result.feasible = true;
  if (jobs.empty()) return result;

  std::vector<Job> pending = jobs;  // not yet released
  std::sort(pending.begin(), pending.end(), [](const Job& a, const Job& b) {
    if (a.release != b.release) return a.release < b.release;
    return a.id < b.id;
  });

  struct Active {
    Job job;
    Duration remaining;
  };
  std::vector<Active> active;
  std::size_t next_release = 0;
  TimePoint clock = pending.front().release;

  auto pick = [&]() -> Active* {
    Active* best = nullptr;
    for (auto& a : active) {
      if (a.remaining == 0) continue;
      if (!best || a.job.deadline < best->job.deadline ||
          (a.job.deadline == best->job.deadline && a.job.id < best->job.id)) {
        best = &a;
      }
    }
    return best;
  };

  while (true) {
    while (next_release < pending.size() && pending[next_release].release <= clock) {
      active.push_back({pending[next_release], pending[next_release].processing});
      ++next_release;
    }
    Active* running = pick();
    if (!running) {
      if (next_release == pending.size()) break;
      clock = pending[next_release].release;  // idle until the next release
      continue;
    }
    TimePoint until = clock + running->remaining;
    if (next_release < pending.size() && pending[next_release].release < until) {
      until = pending[next_release].release;
    }
    if (until > clock) {
      if (!result.schedule.empty() && result.schedule.back().job == running->job.id &&
          result.schedule.back().end == clock) {
        result.schedule.back().end = until;
      } else {
        result.schedule.push_back({running->job.id, clock, until});
      }
      running->remaining -= (until - clock);
      clock = until;
    }
    if (running->remaining == 0) {
      result.completion[running->job.id] = clock;
      if (clock > running->job.deadline) result.feasible = false;
    }
  }
  return result;
}

bool edf_feasible(const std::vector<Job>& jobs) { return edf_schedule(jobs).feasible; }

bool witness_valid(const std::vector<Job>& jobs, const std::vector<EdfSegment>& witness) {
  std::map<int, Duration> volume;
  std::vector<EdfSegment> sorted = witness;
  std::sort(sorted.begin(), sorted.end(),
            [](const EdfSegment& a, const EdfSegment& b) { return a.start < b.start; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!(sorted[i].start < sorted[i].end)) return false;
    if (i > 0 && sorted[i - 1].end > sorted[i].start) return false;
    volume[sorted[i].job] += sorted[i].end - sorted[i].start;
  }
  for (const auto& job : jobs) {
    auto it = volume.find(job.id);
    if (it == volume.end() || it->second != job.processing) return false;
    for (const auto& seg : sorted) {
      if (seg.job != job.id) continue;
      if (seg.start < job.release || seg.end > job.deadline) return false;
    }
  }
  return true;
}

int oracle_cap_from_env() {
  if (const char* value = std::getenv("REGION_SCHED_ORACLE_CAP")) {
    char* end = nullptr;
    long parsed = std::strtol(value, &end, 10);
    if (end && *end == '\0' && parsed > 0) return static_cast<int>(parsed);
  }
  return 22;
}

namespace {

struct SearchState {
  const std::vector<Job>* jobs = nullptr;  // sorted by deadline
  bool weighted = false;
  Rat best_value{0};
  std::vector<int> best_subset;
  std::vector<Job> chosen;
  std::vector<int> chosen_ids;
  Rat chosen_value{0};
};

Rat job_value(const Job& job, bool weighted) { return weighted ? job.weight : Rat(1); }

void search(SearchState& st, std::size_t index, const Rat& remaining_value) {
  if (st.chosen_value + remaining_value <= st.best_value) return;  // bound
  if (index == st.jobs->size()) {
    if (st.chosen_value > st.best_value) {
      st.best_value = st.chosen_value;
      st.best_subset = st.chosen_ids;
    }
    return;
  }
  const Job& job = (*st.jobs)[index];
  Rat rest = remaining_value - job_value(job, st.weighted);

  // Include first: supersets of an infeasible set stay infeasible, so a
  // failed EDF test kills the whole include branch.
  st.chosen.push_back(job);
  if (edf_feasible(st.chosen)) {
    st.chosen_ids.push_back(job.id);
    st.chosen_value += job_value(job, st.weighted);
    search(st, index + 1, rest);
    st.chosen_value -= job_value(job, st.weighted);
    st.chosen_ids.pop_back();
  }
  st.chosen.pop_back();

  search(st, index + 1, rest);
}

}  // namespace

OracleResult max_throughput_subset(const Instance& instance, bool weighted,
                                   std::optional<int> cap) {
  OracleResult result;
  result.weighted = weighted;

  // Full set first: the short-circuit that makes large feasible
  // constructions instant.
  EdfResult full = edf_schedule(instance.jobs);
  if (full.feasible) {
    for (const auto& job : instance.jobs) {
      result.subset.push_back(job.id);
      result.value += job_value(job, weighted);
    }
    std::sort(result.subset.begin(), result.subset.end());
    result.witness = full.schedule;
    return result;
  }

  int limit = cap ? *cap : oracle_cap_from_env();
  if (static_cast<int>(instance.jobs.size()) > limit) {
    throw CapExceededError("oracle cap " + std::to_string(limit) + " exceeded by " +
                           std::to_string(instance.jobs.size()) + " jobs");
  }

  std::vector<Job> jobs = instance.jobs;
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
    if (a.deadline != b.deadline) return a.deadline < b.deadline;
    return a.id < b.id;
  });

  SearchState st;
  st.jobs = &jobs;
  st.weighted = weighted;

  // Greedy EDF-admission pass seeds the incumbent and tightens pruning.
  std::vector<Job> greedy;
  std::vector<int> greedy_ids;
  Rat greedy_value{0};
  for (const auto& job : jobs) {
    greedy.push_back(job);
    if (edf_feasible(greedy)) {
      greedy_ids.push_back(job.id);
      greedy_value += job_value(job, weighted);
    } else {
      greedy.pop_back();
    }
  }
  st.best_value = greedy_value;
  st.best_subset = greedy_ids;

  Rat total{0};
  for (const auto& job : jobs) total += job_value(job, weighted);
  search(st, 0, total);

  result.value = st.best_value;
  result.subset = st.best_subset;
  std::sort(result.subset.begin(), result.subset.end());

  std::vector<Job> winners;
  for (const auto& job : instance.jobs) {
    if (std::binary_search(result.subset.begin(), result.subset.end(), job.id)) {
      winners.push_back(job);
    }
  }
  result.witness = edf_schedule(winners).schedule;
  return result;
}

std::string oracle_result_to_json(const OracleResult& result) {
  nlohmann::ordered_json doc;
  doc["objective"] = result.weighted ? "weight" : "count";
  doc["value"] = to_string(result.value);
  doc["subset"] = result.subset;
  nlohmann::ordered_json witness = nlohmann::ordered_json::array();
  for (const auto& seg : result.witness) {
    witness.push_back({{"job", seg.job},
                       {"start", to_string(seg.start)},
                       {"end", to_string(seg.end)}});
  }
  doc["witness"] = std::move(witness);
  return doc.dump();
}

}  // namespace rsched
