#pragma once

#include <cstdint>
#include <vector>

#include "lbdd/allotment.hpp"
#include "lbdd/instance.hpp"

namespace lbdd {

// Ground-truth solvers, independent of the loop-removal path. Used by tests
// and the verification tooling only; exponential or polynomial but slow.

struct OracleResult {
  Cost objective{};
  std::vector<int> assignment;  // demand -> center, -1 = unassigned (hard mode)
};

// Plain enumeration of every assignment. Overload mode tries all k^n maps;
// hard mode tries centers under their capacity plus exactly
// max(0, n - total_capacity) unassigned demands, minimizing real cost.
// Throws TooLarge when the state count exceeds `state_bound`.
OracleResult exhaustive_solve(const ProblemInstance& inst, std::int64_t state_bound = 2'000'000);

// Successive-shortest-path min-cost flow with node potentials. Convex
// penalty expansion: each center offers capacity free units, then unit arcs
// costing q(1), q(2), ... (none for infinite penalties). Exact for the
// monotone penalties the instance validation admits.
Cost mincost_flow_solve(const ProblemInstance& inst);

}  // namespace lbdd
