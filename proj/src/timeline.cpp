#include "regionsched/timeline.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace rsched {

namespace {

// First segment with end > t; segments are disjoint and sorted, so starts and
// ends are both increasing.
std::vector<Segment>::const_iterator first_ending_after(
    const std::vector<Segment>& segments, const TimePoint& t) {
  return std::upper_bound(
      segments.begin(), segments.end(), t,
      [](const TimePoint& value, const Segment& seg) { return value < seg.end; });
}

}  // namespace

Owner Timeline::owner_at(const TimePoint& t) const {
  auto it = first_ending_after(segments_, t);
  if (it == segments_.end() || it->start > t) return std::nullopt;
  return it->owner;
}

std::optional<TimePoint> Timeline::next_boundary(const TimePoint& t) const {
  auto it = first_ending_after(segments_, t);
  if (it == segments_.end()) return std::nullopt;
  return it->end;
}

bool Timeline::boundary_at(const TimePoint& t) const {
  auto it = std::lower_bound(
      segments_.begin(), segments_.end(), t,
      [](const Segment& seg, const TimePoint& value) { return seg.end < value; });
  return it != segments_.end() && it->end == t;
}

void Timeline::reserve_region(int job, const TimePoint& t, const Duration& length) {
  assert(length > 0);
  assert(!admitted(job) && "job admitted twice");

  Owner parent = owner_at(t);
  assert(!(parent && *parent == job) && "admission inside the job's own region");

  auto found = first_ending_after(segments_, t);
  std::size_t at = static_cast<std::size_t>(found - segments_.cbegin());
  std::size_t shift_from;
  if (at < segments_.size() && segments_[at].start < t) {
    // t splits this segment; tail keeps the owner and moves right.
    Segment tail{t + length, segments_[at].end + length, segments_[at].owner};
    segments_[at].end = t;
    std::size_t pos = at + 1;
    segments_.insert(segments_.begin() + pos, tail);
    shift_from = pos + 1;
    segments_.insert(segments_.begin() + pos, Segment{t, t + length, job});
    ++shift_from;
  } else {
    // t is in a gap or on a boundary: everything from `at` on shifts.
    segments_.insert(segments_.begin() + static_cast<std::ptrdiff_t>(at),
                     Segment{t, t + length, job});
    shift_from = at + 1;
  }
  for (std::size_t i = shift_from; i < segments_.size(); ++i) {
    segments_[i].start += length;
    segments_[i].end += length;
  }

  admissions_.emplace(job, Admission{t, parent, length});
}

TimePoint Timeline::region_end(int job) const {
  TimePoint end;
  bool found = false;
  for (const auto& seg : segments_) {
    if (seg.owner == job) {
      end = seg.end;
      found = true;
    }
  }
  if (!found) throw std::logic_error("region_end: job has no segments");
  return end;
}

Duration Timeline::reserved_total(int job) const {
  Duration total = 0;
  for (const auto& seg : segments_) {
    if (seg.owner == job) total += seg.end - seg.start;
  }
  return total;
}

void Timeline::check_invariants() const {
  std::map<int, Duration> totals;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& seg = segments_[i];
    if (!(seg.start < seg.end)) throw std::logic_error("empty or inverted segment");
    if (i > 0 && segments_[i - 1].end > seg.start) {
      throw std::logic_error("overlapping segments");
    }
    if (!admissions_.count(seg.owner)) {
      throw std::logic_error("segment owned by unadmitted job");
    }
    totals[seg.owner] += seg.end - seg.start;
  }
  for (const auto& [job, info] : admissions_) {
    auto it = totals.find(job);
    if (it == totals.end() || it->second != info.region_size) {
      throw std::logic_error("region size not conserved for job " + std::to_string(job));
    }
  }
}

InterruptionTree finalize_tree(const Timeline& timeline) {
  InterruptionTree tree;
  // Admission order = order of a_j (each admission happened at a distinct
  // event instant, later admissions have later a_j or equal only never).
  std::vector<std::pair<TimePoint, int>> order;
  for (const auto& [job, info] : timeline.admissions()) {
    InterruptionNode node;
    node.id = job;
    node.parent = info.parent;
    tree.nodes.emplace(job, std::move(node));
    order.emplace_back(info.admitted_at, job);
  }
  std::sort(order.begin(), order.end());
  for (const auto& [at, job] : order) {
    const auto& info = timeline.admissions().at(job);
    if (info.parent) {
      tree.nodes.at(*info.parent).children.push_back(job);
    } else {
      tree.machine_children.push_back(job);
    }
  }
  // Depths and descendant counts; the forest is shallow at desk scale.
  for (auto& [job, node] : tree.nodes) {
    int depth = 0;
    Owner cursor = node.parent;
    while (cursor) {
      ++depth;
      cursor = tree.nodes.at(*cursor).parent;
    }
    node.depth = depth;
    Owner up = node.parent;
    while (up) {
      ++tree.nodes.at(*up).descendants;
      up = tree.nodes.at(*up).parent;
    }
  }
  return tree;
}

namespace {

void collect_paths(const InterruptionTree& tree,
                   const std::map<int, Duration>& processing, const Rat& beta,
                   int root, std::vector<DecayViolation>* out) {
  const Rat& p_root = processing.at(root);
  Rat volume_cap = beta / (Rat(1) - beta) * p_root;
  // Walk every downward path from `root` depth-first.
  struct Frame {
    int node;
    Duration path_volume;
    Rat power;  // beta^len so far
  };
  std::vector<Frame> stack;
  for (int child : tree.nodes.at(root).children) {
    stack.push_back({child, processing.at(child), beta});
  }
  while (!stack.empty()) {
    Frame frame = stack.back();
    stack.pop_back();
    const Rat& p = processing.at(frame.node);
    if (!(p < frame.power * p_root)) {
      out->push_back({"path decay broken below job " + std::to_string(root) +
                      ": p_" + std::to_string(frame.node) + " = " + to_string(p) +
                      " >= beta^len * p = " + to_string(frame.power * p_root)});
    }
    if (!(frame.path_volume < volume_cap)) {
      out->push_back({"path volume below job " + std::to_string(root) + " reaches " +
                      to_string(frame.path_volume) + " >= " + to_string(volume_cap)});
    }
    for (int child : tree.nodes.at(frame.node).children) {
      stack.push_back({child, frame.path_volume + processing.at(child),
                       frame.power * beta});
    }
  }
}

}  // namespace

std::vector<DecayViolation> decay_violations(
    const InterruptionTree& tree, const std::map<int, Duration>& processing,
    const Rat& beta) {
  std::vector<DecayViolation> out;
  for (const auto& [job, node] : tree.nodes) {
    if (node.parent) {
      const Rat& p_child = processing.at(job);
      const Rat& p_parent = processing.at(*node.parent);
      if (!(p_child < beta * p_parent)) {
        out.push_back({"edge decay broken: p_" + std::to_string(job) + " = " +
                       to_string(p_child) + " >= beta * p_" +
                       std::to_string(*node.parent) + " = " +
                       to_string(beta * p_parent)});
      }
    }
    collect_paths(tree, processing, beta, job, &out);
  }
  return out;
}

}  // namespace rsched
