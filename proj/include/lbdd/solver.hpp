#pragma once

#include <optional>
#include <vector>

#include "lbdd/engine.hpp"

namespace lbdd {

struct SolveResult {
  Allotment allotment;
  Cost objective{};
  EngineStats stats;
};

// Inserts the instance's demands in row order into a fresh engine. The
// resulting objective is order-independent; requires overload_allowed mode
// (reduced instances included).
SolveResult solve(const ProblemInstance& inst);
EngineState solve_engine(const ProblemInstance& inst);

struct CertificateReport {
  bool optimal = false;
  std::optional<Loop> witness;  // a negative loop when not optimal
};

// Optimality certificate: optimal iff no anchor admits a negative loop.
// Works on arbitrary complete allotments; when the anchored search's
// precondition fails (some off-anchor negative cycle), the witness comes
// from the unanchored fallback instead.
CertificateReport verify_optimal(const ProblemInstance& inst, const Allotment& a);

struct HardCapacityResult {
  Allotment assignment;  // over the real centers; unassigned demands left out
  Cost objective{};      // real assignment cost only
  std::vector<int> unassigned;
  ProblemInstance reduced;      // the no-overload instance actually solved
  Allotment reduced_allotment;  // certificate-checkable optimum of `reduced`
  EngineStats stats;
};

// Solves a hard-capacity instance through the no-overload reduction and
// strips the overflow center. When total capacity is short, exactly
// demand_count - total_capacity demands end up unassigned.
HardCapacityResult solve_hard_capacity(const ProblemInstance& inst);

}  // namespace lbdd
