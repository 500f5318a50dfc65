#include "regionsched/scheduler.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace rsched {

bool CompletionReport::completes_on_time(int id) const {
  return std::binary_search(on_time.begin(), on_time.end(), id);
}

bool spt_before(const Duration& p_a, const TimePoint& adm_a, int id_a,
                const Duration& p_b, const TimePoint& adm_b, int id_b) {
  if (p_a != p_b) return p_a < p_b;
  if (adm_a != adm_b) return adm_a < adm_b;
  return id_a < id_b;
}

std::optional<int> spt_pick(const std::vector<SptCandidate>& admitted) {
  std::optional<int> best;
  const SptCandidate* best_ptr = nullptr;
  for (const auto& c : admitted) {
    if (c.completed) continue;
    if (!best_ptr || spt_before(c.processing, c.admitted_at, c.id,
                                best_ptr->processing, best_ptr->admitted_at,
                                best_ptr->id)) {
      best_ptr = &c;
      best = c.id;
    }
  }
  return best;
}

RegionScheduler::RegionScheduler(AlgoParams params, Rat instance_epsilon)
    : params_(std::move(params)), epsilon_(std::move(instance_epsilon)) {}

bool RegionScheduler::available(const Job& job) const {
  return job.deadline - clock_ >= (Rat(1) + params_.delta) * job.processing;
}

std::optional<std::size_t> RegionScheduler::pick_admissible() const {
  // Shortest available job, ties by id.
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < pool_.size(); ++i) {
    if (!available(pool_[i])) continue;
    if (!best || pool_[i].processing < pool_[*best].processing ||
        (pool_[i].processing == pool_[*best].processing &&
         pool_[i].id < pool_[*best].id)) {
      best = i;
    }
  }
  if (!best) return std::nullopt;
  Owner owner = timeline_.owner_at(clock_);
  if (owner) {
    const Job* k = nullptr;
    for (const auto& adm : admitted_) {
      if (adm.job.id == *owner) k = &adm.job;
    }
    assert(k && "region owner is not admitted");
    if (!(pool_[*best].processing < params_.beta * k->processing)) return std::nullopt;
  }
  return best;
}

void RegionScheduler::routine() {
  auto candidate = pick_admissible();
  if (!candidate) return;

  Job job = pool_[*candidate];
  pool_.erase(pool_.begin() + static_cast<std::ptrdiff_t>(*candidate));

  Owner parent = timeline_.owner_at(clock_);
  Duration length = params_.alpha * job.processing;
  timeline_.reserve_region(job.id, clock_, length);
  timeline_.check_invariants();

  TraceEvent admit;
  admit.kind = TraceEvent::Kind::Admit;
  admit.t = clock_;
  admit.job = job.id;
  admit.parent = parent;
  admit.region_to = clock_ + length;
  log_.push_back(admit);

  if (params_.model != CommitModel::NoCommitment) {
    TraceEvent commit;
    commit.kind = TraceEvent::Kind::Commit;
    commit.t = clock_;
    commit.job = job.id;
    log_.push_back(commit);
  }

  admitted_.push_back({job, clock_, parent, job.processing, std::nullopt});

  // One routine call per event instant is exhaustive: anything still in the
  // pool is at least as long as the job just admitted.
  assert(!pick_admissible() && "routine admitted but another admission is possible");
}

void RegionScheduler::settle() {
  bool fire = release_pending_ || timeline_.boundary_at(clock_);
  release_pending_ = false;
  if (fire) routine();
}

void RegionScheduler::advance_execution(const TimePoint& to,
                                        std::optional<std::size_t> running) {
  if (!running || to <= clock_) return;
  auto& adm = admitted_[*running];
  adm.remaining -= (to - clock_);
  assert(adm.remaining >= 0);
  if (!exec_.empty() && exec_.back().job == adm.job.id && exec_.back().end == clock_) {
    exec_.back().end = to;
  } else {
    exec_.push_back({adm.job.id, clock_, to});
  }
}

void RegionScheduler::mark_complete(std::size_t idx) {
  auto& adm = admitted_[idx];
  assert(adm.remaining == 0 && !adm.completed_at);
  adm.completed_at = clock_;
  TraceEvent done;
  done.kind = TraceEvent::Kind::Complete;
  done.t = clock_;
  done.job = adm.job.id;
  done.on_time = clock_ <= adm.job.deadline;
  log_.push_back(done);
}

std::optional<std::size_t> RegionScheduler::spt_index() const {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < admitted_.size(); ++i) {
    const auto& c = admitted_[i];
    if (c.completed_at) continue;
    if (!best || spt_before(c.job.processing, c.admitted_at, c.job.id,
                            admitted_[*best].job.processing,
                            admitted_[*best].admitted_at, admitted_[*best].job.id)) {
      best = i;
    }
  }
  return best;
}

void RegionScheduler::run_until(std::optional<TimePoint> limit) {
  if (limit && *limit < clock_) throw std::logic_error("scheduler time went backwards");
  if (limit && *limit == clock_) return;  // same instant: settlement stays pending
  settle();
  for (;;) {
    auto running = spt_index();
    std::optional<TimePoint> completion_t;
    if (running) completion_t = clock_ + admitted_[*running].remaining;
    auto boundary_t = timeline_.next_boundary(clock_);

    std::optional<TimePoint> event_t;
    if (completion_t) event_t = completion_t;
    if (boundary_t && (!event_t || *boundary_t < *event_t)) event_t = boundary_t;

    if (!event_t) {
      if (limit) {
        advance_execution(*limit, running);
        clock_ = *limit;
      }
      return;
    }
    bool is_completion = completion_t && *completion_t == *event_t;
    if (limit && (*event_t > *limit || (*event_t == *limit && !is_completion))) {
      // A boundary exactly at the limit stays pending so that releases
      // arriving at that instant coalesce with it.
      advance_execution(*limit, running);
      clock_ = *limit;
      return;
    }
    advance_execution(*event_t, running);
    clock_ = *event_t;
    if (is_completion) mark_complete(*running);
    bool is_boundary = boundary_t && *boundary_t == clock_;
    if (limit && clock_ == *limit) return;  // boundary (if any) deferred to settle()
    if (is_boundary) routine();
  }
}

void RegionScheduler::release(const Job& job) {
  if (!started_ && job.release < clock_) {
    clock_ = job.release;  // instances may start at negative times
  }
  started_ = true;
  if (job.release < clock_) throw Error("release in the scheduler's past");
  for (const auto& pooled : pool_) {
    if (pooled.id == job.id) throw Error("job id released twice");
  }
  for (const auto& adm : admitted_) {
    if (adm.job.id == job.id) throw Error("job id released twice");
  }
  run_until(job.release);
  TraceEvent rel;
  rel.kind = TraceEvent::Kind::Release;
  rel.t = clock_;
  rel.job = job.id;
  log_.push_back(rel);
  pool_.push_back(job);
  release_pending_ = true;
}

void RegionScheduler::run_to_quiescence() { run_until(std::nullopt); }

CompletionReport RegionScheduler::report() const {
  CompletionReport rep;
  for (const auto& adm : admitted_) {
    if (!adm.completed_at) continue;
    rep.completion[adm.job.id] = *adm.completed_at;
    if (*adm.completed_at <= adm.job.deadline) rep.on_time.push_back(adm.job.id);
    else rep.late.push_back(adm.job.id);
  }
  std::sort(rep.on_time.begin(), rep.on_time.end());
  std::sort(rep.late.begin(), rep.late.end());
  return rep;
}

CompletionReport RegionScheduler::if_no_future_releases() const {
  RegionScheduler copy = *this;
  copy.run_to_quiescence();
  return copy.report();
}

Trace RegionScheduler::finish() {
  run_to_quiescence();
  Trace trace;
  trace.params = params_;
  trace.epsilon = epsilon_;
  trace.events = log_;
  trace.execution = exec_;
  trace.final_segments = timeline_.segments();
  trace.tree = finalize_tree(timeline_);

  for (const auto& adm : admitted_) {
    trace.admitted_at[adm.job.id] = adm.admitted_at;
    assert(adm.completed_at && "quiesced run left an admitted job unfinished");
    trace.completion[adm.job.id] = *adm.completed_at;
    if (params_.model != CommitModel::NoCommitment) {
      trace.commitment[adm.job.id] = adm.admitted_at;
    }
  }

  trace.summary.admitted = static_cast<int>(admitted_.size());
  for (const auto& event : log_) {
    if (event.kind == TraceEvent::Kind::Release) ++trace.summary.released;
  }
  for (const auto& adm : admitted_) {
    bool on_time = *adm.completed_at <= adm.job.deadline;
    if (on_time) ++trace.summary.completed_on_time;
    else ++trace.summary.completed_late;
    if (!on_time && params_.model != CommitModel::NoCommitment) {
      ++trace.summary.commitments_broken;
    }
  }
  return trace;
}

Trace run(const Instance& instance, const AlgoParams& params) {
  RegionScheduler sched(params, instance.epsilon);
  std::vector<Job> jobs = instance.jobs;
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
    if (a.release != b.release) return a.release < b.release;
    return a.id < b.id;
  });
  for (const auto& job : jobs) sched.release(job);
  return sched.finish();
}

std::vector<int> verify_commitments(const Trace& trace, const AlgoParams& params) {
  (void)params;  // the caller decides whether Condition (1) demands emptiness
  std::vector<int> late;
  std::vector<int> finished;
  for (const auto& event : trace.events) {
    if (event.kind != TraceEvent::Kind::Complete) continue;
    finished.push_back(event.job);
    if (!event.on_time && trace.admitted_at.count(event.job)) {
      late.push_back(event.job);
    }
  }
  // An admitted job without a completion event is also a broken commitment.
  for (const auto& [job, at] : trace.admitted_at) {
    if (std::find(finished.begin(), finished.end(), job) == finished.end()) {
      late.push_back(job);
    }
  }
  std::sort(late.begin(), late.end());
  late.erase(std::unique(late.begin(), late.end()), late.end());
  return late;
}

}  // namespace rsched
