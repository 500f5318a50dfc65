#include "grid_sim.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace rsched::testsupport {

namespace {

struct Piece {
  Rat start;
  Rat end;
};

struct Running {
  Job job;
  Rat admitted_at;
  Rat remaining;
  bool done = false;
};

}  // namespace

GridOutcome grid_simulate(const Instance& instance, const AlgoParams& params) {
  GridOutcome outcome;
  if (instance.jobs.empty()) return outcome;

  BigInt denom = 1;
  for (const auto& job : instance.jobs) {
    denom = lcm(denom, denominator_of(job.release));
    denom = lcm(denom, denominator_of(job.processing));
    denom = lcm(denom, denominator_of(job.deadline));
  }
  BigInt param_denom = lcm(lcm(denominator_of(params.alpha), denominator_of(params.beta)),
                           denominator_of(params.delta));
  Rat h = Rat(1) / Rat(2 * denom * param_denom);

  std::vector<Job> upcoming = instance.jobs;
  std::sort(upcoming.begin(), upcoming.end(), [](const Job& a, const Job& b) {
    if (a.release != b.release) return a.release < b.release;
    return a.id < b.id;
  });

  std::vector<Job> pool;
  std::vector<Running> admitted;
  std::map<int, std::vector<Piece>> pieces;
  std::size_t next = 0;
  Rat t = upcoming.front().release;

  auto piece_end_at = [&](const Rat& when) {
    for (const auto& [job, list] : pieces) {
      for (const auto& piece : list) {
        if (piece.end == when) return true;
      }
    }
    return false;
  };
  auto any_piece_end_at_or_after = [&](const Rat& when) {
    for (const auto& [job, list] : pieces) {
      for (const auto& piece : list) {
        if (piece.end >= when) return true;
      }
    }
    return false;
  };
  auto owner_at = [&](const Rat& when) -> const Job* {
    for (auto& adm : admitted) {
      for (const auto& piece : pieces[adm.job.id]) {
        if (piece.start <= when && when < piece.end) return &adm.job;
      }
    }
    return nullptr;
  };

  long safety = 0;
  for (;;) {
    if (++safety > 50'000'000) throw std::runtime_error("grid simulator ran away");

    bool work_left = next < upcoming.size() || any_piece_end_at_or_after(t);
    for (const auto& adm : admitted) {
      if (!adm.done) work_left = true;
    }
    if (!work_left) break;

    bool released_now = false;
    while (next < upcoming.size() && upcoming[next].release == t) {
      pool.push_back(upcoming[next]);
      released_now = true;
      ++next;
    }

    if (released_now || piece_end_at(t)) {
      // Same routine as the engine: shortest available job, ties by id.
      std::optional<std::size_t> best;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (pool[i].deadline - t < (Rat(1) + params.delta) * pool[i].processing) continue;
        if (!best || pool[i].processing < pool[*best].processing ||
            (pool[i].processing == pool[*best].processing &&
             pool[i].id < pool[*best].id)) {
          best = i;
        }
      }
      const Job* owner = owner_at(t);
      if (best && (!owner || pool[*best].processing < params.beta * owner->processing)) {
        Job job = pool[*best];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(*best));
        Rat length = params.alpha * job.processing;
        // Split the piece containing t, then shift everything at/after t.
        for (auto& [id, list] : pieces) {
          std::vector<Piece> updated;
          for (auto& piece : list) {
            if (piece.start < t && t < piece.end) {
              updated.push_back({piece.start, t});
              updated.push_back({t + length, piece.end + length});
            } else if (piece.start >= t) {
              updated.push_back({piece.start + length, piece.end + length});
            } else {
              updated.push_back(piece);
            }
          }
          list = std::move(updated);
        }
        pieces[job.id].push_back({t, t + length});
        admitted.push_back({job, t, job.processing, false});
        outcome.admitted.insert(job.id);
      }
    }

    // SPT for the slice [t, t + h).
    Running* run = nullptr;
    for (auto& adm : admitted) {
      if (adm.done) continue;
      if (!run || adm.job.processing < run->job.processing ||
          (adm.job.processing == run->job.processing &&
           (adm.admitted_at < run->admitted_at ||
            (adm.admitted_at == run->admitted_at && adm.job.id < run->job.id)))) {
        run = &adm;
      }
    }
    if (run) {
      run->remaining -= h;
      if (run->remaining < 0) throw std::runtime_error("grid step overshot a completion");
      if (run->remaining == 0) {
        run->done = true;
        outcome.completion[run->job.id] = t + h;
        if (t + h <= run->job.deadline) ++outcome.on_time;
      }
    }
    t += h;
  }
  return outcome;
}

}  // namespace rsched::testsupport
