#pragma once

#include <random>
#include <vector>

#include "lbdd/allotment.hpp"
#include "lbdd/gen.hpp"
#include "lbdd/instance.hpp"
#include "lbdd/oracle.hpp"

namespace lbdd::test {

inline ProblemInstance make_instance(std::vector<std::int64_t> caps,
                                     std::vector<PenaltySpec> penalties,
                                     std::vector<std::vector<std::int64_t>> rows,
                                     Mode mode = Mode::OverloadAllowed) {
  ProblemInstance inst;
  inst.mode = mode;
  for (std::size_t i = 0; i < caps.size(); ++i)
    inst.centers.push_back(ServiceCenter{static_cast<int>(i), caps[i], penalties[i], 0});
  inst.cost = CostMatrix(static_cast<int>(caps.size()));
  for (const auto& row : rows) inst.cost.append_row(row);
  return validate_instance(std::move(inst));
}

// Two unit-capacity centers with constant(10) penalties and three demands;
// optimum 16 at {d0, d1 -> S0, d2 -> S1}.
inline ProblemInstance make_i1(Mode mode = Mode::OverloadAllowed) {
  const bool hard = mode == Mode::HardCapacity;
  const PenaltySpec pen = hard ? PenaltySpec::infinite() : PenaltySpec::constant(10);
  return make_instance({1, 1}, {pen, pen}, {{1, 5}, {2, 4}, {6, 3}}, mode);
}

// Four unit-capacity centers whose demands form a -13 transfer cycle
// d0: S0->S1 (-4), d1: S1->S2 (-3), d2: S2->S3 (-5), d3: S3->S0 (-1);
// the constant(50) penalties keep every other loop nonnegative.
inline ProblemInstance make_ring() {
  const PenaltySpec pen = PenaltySpec::constant(50);
  return make_instance({1, 1, 1, 1}, {pen, pen, pen, pen},
                       {{5, 1, 100, 100}, {100, 4, 1, 100}, {100, 100, 6, 1}, {1, 100, 100, 2}});
}

inline Allotment assignment_from(const ProblemInstance& inst, const std::vector<int>& map) {
  Allotment a(inst.center_count(), inst.demand_count());
  for (std::size_t d = 0; d < map.size(); ++d)
    if (map[d] >= 0) a.place(static_cast<int>(d), map[d]);
  return a;
}

// Deterministic integer in [lo, hi].
inline std::int64_t pick(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

struct SmallParams {
  int max_k = 3;
  int min_k = 2;
  int max_n = 8;
  int min_n = 1;
  std::int64_t max_cost = 100;
  std::int64_t max_cap = 3;
  bool hard = false;
};

// Random small instance drawn directly (independent of the gen module) so
// oracle comparisons do not share code with the component under test.
inline ProblemInstance random_small(std::mt19937_64& rng, const SmallParams& p = {}) {
  ProblemInstance inst;
  inst.mode = p.hard ? Mode::HardCapacity : Mode::OverloadAllowed;
  const int k = static_cast<int>(pick(rng, p.min_k, p.max_k));
  const int n = static_cast<int>(pick(rng, p.min_n, p.max_n));
  for (int i = 0; i < k; ++i) {
    ServiceCenter c;
    c.id = i;
    c.capacity = pick(rng, 0, p.max_cap);
    if (p.hard) {
      c.penalty = PenaltySpec::infinite();
    } else {
      switch (pick(rng, 0, 2)) {
        case 0:
          c.penalty = PenaltySpec::constant(pick(rng, 1, 20));
          break;
        case 1:
          c.penalty = PenaltySpec::linear(pick(rng, 1, 10), pick(rng, 0, 4));
          break;
        default: {
          std::vector<std::int64_t> vs;
          std::int64_t v = pick(rng, 1, 8);
          const std::int64_t len = pick(rng, 1, 4);
          for (std::int64_t t = 0; t < len; ++t) {
            vs.push_back(v);
            v += pick(rng, 0, 4);
          }
          c.penalty = PenaltySpec::table(std::move(vs));
          break;
        }
      }
    }
    inst.centers.push_back(std::move(c));
  }
  inst.cost = CostMatrix(k);
  std::vector<std::int64_t> row(static_cast<std::size_t>(k));
  for (int d = 0; d < n; ++d) {
    for (auto& v : row) v = pick(rng, 1, p.max_cost);
    inst.cost.append_row(row);
  }
  return validate_instance(std::move(inst));
}

}  // namespace lbdd::test
