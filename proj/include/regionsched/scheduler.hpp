#pragma once

#include "regionsched/core.hpp"
#include "regionsched/timeline.hpp"
#include "regionsched/trace.hpp"

#include <map>
#include <optional>
#include <vector>

namespace rsched {

struct CompletionReport {
  std::map<int, TimePoint> completion;
  std::vector<int> on_time;  // sorted ids
  std::vector<int> late;

  int on_time_count() const { return static_cast<int>(on_time.size()); }
  bool completes_on_time(int id) const;
};

// SPT order: total processing time, ties by earlier admission, then id.
bool spt_before(const Duration& p_a, const TimePoint& adm_a, int id_a,
                const Duration& p_b, const TimePoint& adm_b, int id_b);

struct SptCandidate {
  int id = 0;
  Duration processing;
  TimePoint admitted_at;
  bool completed = false;
};

// The scheduling routine's pick: the admitted uncompleted job to run, or
// nothing (idle).
std::optional<int> spt_pick(const std::vector<SptCandidate>& admitted);

// The surface adaptive adversaries drive: releases go in, the only feedback
// is the counterfactual "what completes if nothing else arrives".
class OnlineScheduler {
 public:
  virtual ~OnlineScheduler() = default;
  virtual void release(const Job& job) = 0;
  virtual TimePoint now() const = 0;
  virtual CompletionReport if_no_future_releases() const = 0;
};

// Event-driven implementation of the region algorithm. Events are job
// releases and region ends (segment boundaries); at each event instant the
// region preemption routine runs once, with all releases at that instant
// already pooled. Between events the machine runs the SPT job. Admitted jobs
// keep running past their deadlines; on-time status is judged at completion.
//
// The whole object is a value: copying it is the snapshot operation, and
// counterfactual runs never touch the original.
class RegionScheduler final : public OnlineScheduler {
 public:
  RegionScheduler(AlgoParams params, Rat instance_epsilon);

  void release(const Job& job) override;
  TimePoint now() const override { return clock_; }
  CompletionReport if_no_future_releases() const override;

  // Advances through every pending event with no further releases assumed.
  void run_to_quiescence();
  CompletionReport report() const;

  // Quiesces and assembles the full trace.
  Trace finish();

  // Introspection for tests and the verifier.
  const Timeline& timeline() const { return timeline_; }
  int admitted_count() const { return static_cast<int>(admitted_.size()); }

 private:
  struct AdmittedJob {
    Job job;
    TimePoint admitted_at;
    Owner parent;
    Duration remaining;
    std::optional<TimePoint> completed_at;
  };

  bool available(const Job& job) const;       // at clock_
  std::optional<std::size_t> pick_admissible() const;
  std::optional<std::size_t> spt_index() const;
  void routine();
  void settle();
  void advance_execution(const TimePoint& to, std::optional<std::size_t> running);
  void mark_complete(std::size_t idx);
  void run_until(std::optional<TimePoint> limit);

  AlgoParams params_;
  Rat epsilon_;
  TimePoint clock_{0};
  bool started_ = false;
  bool release_pending_ = false;
  std::vector<Job> pool_;  // released, not admitted
  std::vector<AdmittedJob> admitted_;
  Timeline timeline_;
  std::vector<TraceEvent> log_;
  std::vector<ExecSegment> exec_;
};

// Batch entry point: feeds the instance release-by-release and quiesces.
Trace run(const Instance& instance, const AlgoParams& params);

// Admitted jobs that completed after their deadline. Must be empty whenever
// check_condition1(alpha, beta, delta) holds.
std::vector<int> verify_commitments(const Trace& trace, const AlgoParams& params);

}  // namespace rsched
