#include "lbdd/solver.hpp"

#include <cassert>
#include <string>
#include <utility>

namespace lbdd {

EngineState solve_engine(const ProblemInstance& inst) {
  ProblemInstance base = inst;
  base.cost = CostMatrix(inst.center_count());
  EngineState engine(std::move(base));
  for (int d = 0; d < inst.demand_count(); ++d) engine.insert_demand(inst.cost.row(d));
  return engine;
}

SolveResult solve(const ProblemInstance& inst) {
  EngineState engine = solve_engine(inst);
  return SolveResult{engine.allotment(), engine.objective(), engine.stats()};
}

CertificateReport verify_optimal(const ProblemInstance& inst, const Allotment& a) {
  for (int d = 0; d < inst.demand_count(); ++d)
    if (!a.assigned(d))
      throw Error(Errc::UnassignedDemand,
                  "demand " + std::to_string(d) + " is unassigned; certificates need a complete allotment");
  TransferHeapSet heaps = build_heaps(inst, a);
  for (int j = 0; j < inst.center_count(); ++j) {
    try {
      if (auto loop = most_negative_loop(inst, a, heaps, j, LoopVariant::Through))
        return CertificateReport{false, std::move(loop)};
    } catch (const Error& e) {
      // A negative cycle avoiding the anchor drowns out the anchored search;
      // fall back to a direct cycle hunt, which must succeed.
      if (e.code() != Errc::NegativeCycleOffAnchor) throw;
      auto loop = find_negative_cycle(inst, a, heaps);
      assert(loop.has_value());
      return CertificateReport{false, std::move(loop)};
    }
  }
  return CertificateReport{true, std::nullopt};
}

HardCapacityResult solve_hard_capacity(const ProblemInstance& inst) {
  if (inst.mode != Mode::HardCapacity)
    throw Error(Errc::WrongMode, "hard-capacity solving needs a hard_capacity instance");

  ProblemInstance reduced = reduce_no_overload(inst);
  EngineState engine = solve_engine(reduced);

  const int k = inst.center_count();
  const int n = inst.demand_count();
  const int virtual_center = k;

  HardCapacityResult out{Allotment(k, n), Cost{}, {}, std::move(reduced),
                         engine.allotment(), engine.stats()};
  for (int d = 0; d < n; ++d) {
    const int c = out.reduced_allotment.center_of(d);
    if (c == virtual_center) {
      out.unassigned.push_back(d);
    } else {
      out.assignment.place(d, c);
      out.objective += Cost::finite(inst.cost.at(d, c));
    }
  }
  for (int j = 0; j < k; ++j) {
    assert(out.assignment.occupancy(j) <= inst.centers[static_cast<std::size_t>(j)].capacity);
    out.objective += penalty_block(inst, j, out.assignment.occupancy(j));
  }
  return out;
}

}  // namespace lbdd
