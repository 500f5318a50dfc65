#pragma once

#include "regionsched/core.hpp"
#include "regionsched/trace.hpp"

#include <string>
#include <vector>

namespace rsched {

struct Violation {
  std::string code;    // stable identifier, e.g. "SizeConservation"
  std::string detail;
};

// Exhaustive trace check against every engine invariant: region structure
// (disjointness, |R(j)| = alpha p_j, a_j fixed), admission guard, interruption
// tree shape and geometric decay, execution sanity, within-region priority,
// the alpha = 1 completion law, half-completion under the no-commitment
// defaults, and commitment safety whenever Condition (1) holds.
//
// Empty result = conforming trace. Throws MismatchedTripleError when the
// trace does not belong to (instance, params).
std::vector<Violation> verify_trace(const Trace& trace, const Instance& instance,
                                    const AlgoParams& params);

std::string violations_to_json(const std::vector<Violation>& violations);

}  // namespace rsched
