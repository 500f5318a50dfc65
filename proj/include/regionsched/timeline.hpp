#pragma once

#include "regionsched/core.hpp"

#include <map>
#include <optional>
#include <vector>

namespace rsched {

// The machine root is represented as an absent owner; job ids may be any int
// (generators use negative ids), so no sentinel id is reserved.
using Owner = std::optional<int>;

struct Segment {
  TimePoint start;
  TimePoint end;
  int owner = 0;
};

// The global region structure: pairwise-disjoint, sorted segments realizing
// every job's region. Admitting a job at t splices [t, t + length) in and
// shifts everything at or after t right by length; pieces strictly before t
// never move, so the past is frozen.
class Timeline {
 public:
  struct Admission {
    TimePoint admitted_at;  // a_j, fixed forever
    Owner parent;           // owner of the instant a_j
    Duration region_size;   // alpha * p_j
  };

  Owner owner_at(const TimePoint& t) const;
  // Smallest segment end > t, the next region-end event.
  std::optional<TimePoint> next_boundary(const TimePoint& t) const;
  bool boundary_at(const TimePoint& t) const;

  // Splices [t, t + length) for `job`, splitting the segment containing t (if
  // any) and shifting every segment that begins at or after t by length.
  // Records the admission with parent = owner_at(t).
  void reserve_region(int job, const TimePoint& t, const Duration& length);

  const std::vector<Segment>& segments() const { return segments_; }
  const std::map<int, Admission>& admissions() const { return admissions_; }
  bool admitted(int job) const { return admissions_.count(job) != 0; }

  // b_j: final end of the job's region. Requires the job to be admitted.
  TimePoint region_end(int job) const;
  Duration reserved_total(int job) const;

  // Full-scan structural check: sorted, disjoint, per-job sizes preserved.
  // Throws std::logic_error on corruption; engine bug, not user error.
  void check_invariants() const;

 private:
  std::vector<Segment> segments_;
  std::map<int, Admission> admissions_;
};

struct InterruptionNode {
  int id = 0;
  Owner parent;                // nullopt = machine root
  std::vector<int> children;   // in admission order
  int descendants = 0;         // tau_j = |T_-j|
  int depth = 0;               // distance from the machine root
};

// Forest over admitted jobs rooted at the virtual machine job (p = infinity):
// j is a child of k iff j's admission interrupted k's region.
struct InterruptionTree {
  std::map<int, InterruptionNode> nodes;
  std::vector<int> machine_children;  // admission order

  int size() const { return static_cast<int>(nodes.size()); }
};

InterruptionTree finalize_tree(const Timeline& timeline);

// Geometric decay over one tree: every edge (k, j) must satisfy
// p_j < beta * p_k, and every downward path below a node j must have total
// volume < beta/(1-beta) * p_j with the deepest job < beta^len * p_j.
struct DecayViolation {
  std::string what;
};
std::vector<DecayViolation> decay_violations(
    const InterruptionTree& tree, const std::map<int, Duration>& processing,
    const Rat& beta);

}  // namespace rsched
