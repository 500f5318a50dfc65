#include "regionsched/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>

namespace rsched {

namespace {

void add(std::vector<Violation>* out, std::string code, std::string detail) {
  out->push_back({std::move(code), std::move(detail)});
}

std::string jid(int job) { return "job " + std::to_string(job); }

}  // namespace

std::vector<Violation> verify_trace(const Trace& trace, const Instance& instance,
                                    const AlgoParams& params) {
  if (trace.params.model != params.model || trace.params.alpha != params.alpha ||
      trace.params.beta != params.beta || trace.params.delta != params.delta) {
    throw MismatchedTripleError("trace was produced with different parameters");
  }
  if (trace.epsilon != instance.epsilon) {
    throw MismatchedTripleError("trace was produced for a different epsilon");
  }
  for (const auto& event : trace.events) {
    if (!instance.find(event.job)) {
      throw MismatchedTripleError("trace mentions " + jid(event.job) +
                                  " which the instance does not contain");
    }
  }

  std::vector<Violation> out;

  // Release log covers the instance exactly; admissions only follow releases.
  {
    std::vector<int> released;
    for (const auto& event : trace.events) {
      if (event.kind == TraceEvent::Kind::Release) released.push_back(event.job);
    }
    std::sort(released.begin(), released.end());
    for (const auto& job : instance.jobs) {
      if (!std::binary_search(released.begin(), released.end(), job.id)) {
        add(&out, "ReleaseLog", jid(job.id) + " never released in the trace");
      } else {
        for (const auto& event : trace.events) {
          if (event.kind == TraceEvent::Kind::Release && event.job == job.id &&
              event.t != job.release) {
            add(&out, "ReleaseLog", jid(job.id) + " released at the wrong time");
          }
        }
      }
    }
    for (const auto& [job, at] : trace.admitted_at) {
      if (!std::binary_search(released.begin(), released.end(), job)) {
        add(&out, "ReleaseLog", jid(job) + " admitted without a release");
      }
    }
  }

  // Final region structure: sorted, disjoint, sizes conserved, a_j fixed.
  std::map<int, Duration> reserved;
  std::map<int, TimePoint> first_start;
  std::map<int, TimePoint> region_end;
  for (std::size_t i = 0; i < trace.final_segments.size(); ++i) {
    const auto& seg = trace.final_segments[i];
    if (!(seg.start < seg.end)) {
      add(&out, "RegionOverlap", "segment with non-positive length at " +
          to_string(seg.start));
    }
    if (i > 0 && trace.final_segments[i - 1].end > seg.start) {
      add(&out, "RegionOverlap", "segments overlap near " + to_string(seg.start));
    }
    reserved[seg.owner] += seg.end - seg.start;
    if (!first_start.count(seg.owner)) first_start[seg.owner] = seg.start;
    region_end[seg.owner] = seg.end;
  }
  for (const auto& [job, at] : trace.admitted_at) {
    const Job* spec = instance.find(job);
    auto it = reserved.find(job);
    if (it == reserved.end() || it->second != params.alpha * spec->processing) {
      add(&out, "SizeConservation",
          jid(job) + " region totals " +
              (it == reserved.end() ? std::string("0") : to_string(it->second)) +
              ", expected " + to_string(params.alpha * spec->processing));
    }
    if (first_start.count(job) && first_start.at(job) != at) {
      add(&out, "RegionStartMoved", jid(job) + " first segment starts at " +
          to_string(first_start.at(job)) + " but admission was " + to_string(at));
    }
  }
  for (const auto& [job, total] : reserved) {
    if (!trace.admitted_at.count(job)) {
      add(&out, "SizeConservation", jid(job) + " owns segments but was never admitted");
    }
  }

  // Admission guard and commitment bookkeeping.
  for (const auto& event : trace.events) {
    if (event.kind != TraceEvent::Kind::Admit) continue;
    const Job* job = instance.find(event.job);
    if (event.t < job->release) {
      add(&out, "AdmissionGuard", jid(event.job) + " admitted before release");
    }
    if (job->deadline - event.t < (Rat(1) + params.delta) * job->processing) {
      add(&out, "AdmissionGuard", jid(event.job) + " admitted too close to deadline at t=" +
          to_string(event.t));
    }
    if (event.parent) {
      const Job* parent = instance.find(*event.parent);
      if (!parent) {
        add(&out, "AdmissionGuard", jid(event.job) + " has unknown parent");
      } else if (!(job->processing < params.beta * parent->processing)) {
        add(&out, "AdmissionGuard",
            jid(event.job) + " admitted against owner " + jid(*event.parent) +
                " despite p = " + to_string(job->processing) + " >= beta*p_k = " +
                to_string(params.beta * parent->processing));
      }
    }
  }

  // Interruption tree: recompute each parent as the innermost earlier
  // admission whose region span [a_k, b_k) strictly contains a_j. Region
  // spans are laminar and the past is frozen, so final spans are exact here.
  for (const auto& [job, at] : trace.admitted_at) {
    Owner expected;
    TimePoint best_start;
    for (const auto& [other, other_at] : trace.admitted_at) {
      if (other == job || !(other_at < at)) continue;
      if (!region_end.count(other)) continue;
      if (other_at < at && at < region_end.at(other)) {
        if (!expected || other_at > best_start) {
          expected = other;
          best_start = other_at;
        }
      }
    }
    auto node = trace.tree.nodes.find(job);
    if (node == trace.tree.nodes.end()) {
      add(&out, "TreeShape", jid(job) + " missing from the interruption tree");
      continue;
    }
    if (node->second.parent != expected) {
      add(&out, "TreeShape",
          jid(job) + " parent recorded as " +
              (node->second.parent ? jid(*node->second.parent) : std::string("M")) +
              " but the region structure says " +
              (expected ? jid(*expected) : std::string("M")));
    }
  }

  // Geometric decay along the tree.
  {
    std::map<int, Duration> processing;
    for (const auto& [job, node] : trace.tree.nodes) {
      if (const Job* spec = instance.find(job)) processing[job] = spec->processing;
    }
    for (const auto& violation : decay_violations(trace.tree, processing, params.beta)) {
      add(&out, "GeometricDecay", violation.what);
    }
  }

  // Execution log: disjoint, admitted jobs only, never before admission,
  // budget exactly p_j with the completion at the last executed instant.
  std::map<int, Duration> executed;
  std::map<int, TimePoint> last_exec_end;
  for (std::size_t i = 0; i < trace.execution.size(); ++i) {
    const auto& seg = trace.execution[i];
    if (!(seg.start < seg.end)) {
      add(&out, "ExecOverlap", "empty execution segment for " + jid(seg.job));
    }
    if (i > 0 && trace.execution[i - 1].end > seg.start) {
      add(&out, "ExecOverlap", "execution overlaps near " + to_string(seg.start));
    }
    if (!trace.admitted_at.count(seg.job)) {
      add(&out, "ExecBudget", jid(seg.job) + " executed but never admitted");
      continue;
    }
    if (seg.start < trace.admitted_at.at(seg.job)) {
      add(&out, "ExecBudget", jid(seg.job) + " executed before admission");
    }
    executed[seg.job] += seg.end - seg.start;
    last_exec_end[seg.job] = seg.end;
  }
  for (const auto& [job, at] : trace.admitted_at) {
    const Job* spec = instance.find(job);
    auto done = trace.completion.find(job);
    auto total = executed.find(job);
    Duration got = total == executed.end() ? Duration(0) : total->second;
    if (done == trace.completion.end()) {
      if (got >= spec->processing) {
        add(&out, "CompletionMismatch", jid(job) + " executed fully but has no completion");
      }
      continue;
    }
    if (got != spec->processing) {
      add(&out, "CompletionMismatch", jid(job) + " completed after executing " +
          to_string(got) + " of " + to_string(spec->processing));
    }
    if (!last_exec_end.count(job) || last_exec_end.at(job) != done->second) {
      add(&out, "CompletionMismatch", jid(job) + " completion time differs from last execution");
    }
  }

  // Within-region priority: during any final segment of j, the executed job
  // is j unless j was already complete (alpha >= 1 always holds here).
  for (const auto& seg : trace.final_segments) {
    auto done = trace.completion.find(seg.owner);
    for (const auto& exec : trace.execution) {
      TimePoint lo = std::max(seg.start, exec.start);
      TimePoint hi = std::min(seg.end, exec.end);
      if (!(lo < hi) || exec.job == seg.owner) continue;
      if (done != trace.completion.end() && done->second <= lo) continue;
      add(&out, "WithinRegionPriority",
          jid(exec.job) + " ran inside the region of " + jid(seg.owner) + " at " +
              to_string(lo));
    }
  }

  // alpha = 1: every admitted job completes exactly at its region end.
  if (params.alpha == 1) {
    for (const auto& [job, at] : trace.admitted_at) {
      auto done = trace.completion.find(job);
      if (done == trace.completion.end()) continue;
      if (!region_end.count(job) || region_end.at(job) != done->second) {
        add(&out, "CompletionAtRegionEnd", jid(job) + " completed at " +
            to_string(done->second) + " not at its region end");
      }
    }
  }

  // Commitment ledger: commitment == admission, and in the delta model no
  // commitment after d - (1+delta) p.
  if (params.model != CommitModel::NoCommitment) {
    for (const auto& [job, at] : trace.admitted_at) {
      auto it = trace.commitment.find(job);
      if (it == trace.commitment.end()) {
        add(&out, "CommitLedger", jid(job) + " admitted but never committed");
        continue;
      }
      if (it->second != at) {
        add(&out, "CommitLedger", jid(job) + " commitment differs from admission time");
      }
      const Job* spec = instance.find(job);
      if (it->second > spec->deadline - (Rat(1) + params.delta) * spec->processing) {
        add(&out, "CommitLedger", jid(job) + " committed after the latest commitment time");
      }
    }
    if (check_condition1(params.alpha, params.beta, params.delta)) {
      for (const auto& event : trace.events) {
        if (event.kind == TraceEvent::Kind::Complete && !event.on_time) {
          add(&out, "CommitmentSafety", jid(event.job) + " completed late despite Condition (1)");
        }
      }
    }
  }

  // Half-completion under the no-commitment defaults.
  if (params.model == CommitModel::NoCommitment && instance.slack_violations.empty()) {
    Rat eps = instance.epsilon > 1 ? Rat(1) : instance.epsilon;
    if (params.alpha == 1 && params.beta == eps / 4 && params.delta == eps / 2) {
      int admitted = trace.summary.admitted;
      int on_time = trace.summary.completed_on_time;
      if (2 * on_time < admitted) {
        add(&out, "HalfCompletion",
            std::to_string(on_time) + " on time of " + std::to_string(admitted) +
                " admitted");
      }
    }
  }

  // Summary must match the recounted events.
  {
    TraceSummary recount;
    for (const auto& event : trace.events) {
      switch (event.kind) {
        case TraceEvent::Kind::Release: ++recount.released; break;
        case TraceEvent::Kind::Admit: ++recount.admitted; break;
        case TraceEvent::Kind::Complete:
          if (event.on_time) ++recount.completed_on_time;
          else ++recount.completed_late;
          break;
        case TraceEvent::Kind::Commit: break;
      }
    }
    recount.commitments_broken = 0;
    for (const auto& event : trace.events) {
      if (event.kind == TraceEvent::Kind::Complete && !event.on_time &&
          trace.commitment.count(event.job)) {
        ++recount.commitments_broken;
      }
    }
    if (recount.released != trace.summary.released ||
        recount.admitted != trace.summary.admitted ||
        recount.completed_on_time != trace.summary.completed_on_time ||
        recount.completed_late != trace.summary.completed_late ||
        recount.commitments_broken != trace.summary.commitments_broken) {
      add(&out, "SummaryMismatch", "summary disagrees with the event log");
    }
  }

  return out;
}

std::string violations_to_json(const std::vector<Violation>& violations) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& v : violations) {
    doc.push_back({{"code", v.code}, {"detail", v.detail}});
  }
  return doc.dump();
}

}  // namespace rsched
