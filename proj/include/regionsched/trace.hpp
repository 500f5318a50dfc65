#pragma once

#include "regionsched/core.hpp"
#include "regionsched/timeline.hpp"

#include <map>
#include <string>
#include <vector>

namespace rsched {

struct ExecSegment {
  int job = 0;
  TimePoint start;
  TimePoint end;
};

struct TraceEvent {
  enum class Kind { Release, Admit, Commit, Complete };
  Kind kind = Kind::Release;
  TimePoint t;
  int job = 0;
  Owner parent;                 // Admit only
  std::optional<TimePoint> region_to;  // Admit only: reserved [t, region_to)
  bool on_time = false;         // Complete only
};

std::string to_string(TraceEvent::Kind kind);

struct TraceSummary {
  int released = 0;
  int admitted = 0;
  int completed_on_time = 0;
  int completed_late = 0;
  int commitments_broken = 0;
};

// Full record of one run: the event log, the realized execution, the final
// region structure and interruption tree, and the per-model summary.
struct Trace {
  AlgoParams params;
  Rat epsilon{1};
  std::vector<TraceEvent> events;
  std::vector<ExecSegment> execution;
  std::vector<Segment> final_segments;
  InterruptionTree tree;
  std::map<int, TimePoint> admitted_at;
  std::map<int, TimePoint> completion;
  std::map<int, TimePoint> commitment;
  TraceSummary summary;
};

// Stable field order; identical runs serialize byte-identically.
std::string trace_to_json(const Trace& trace);
Trace trace_from_json(std::string_view json_text);

}  // namespace rsched
