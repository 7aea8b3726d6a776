#include <doctest.h>

#include <optional>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "lbdd/transfer_heaps.hpp"

using namespace lbdd;
using test::assignment_from;
using test::make_i1;
using test::make_instance;

namespace {

// Reference for the heap set: scan every demand at `from`.
std::optional<MinEdge> scan_min_edge(const ProblemInstance& inst, const Allotment& a, int from,
                                     int to) {
  std::optional<MinEdge> best;
  for (const int d : a.members(from)) {
    const std::int64_t w = inst.cost.at(d, to) - inst.cost.at(d, from);
    if (!best || w < best->weight || (w == best->weight && d < best->demand))
      best = MinEdge{from, to, d, w};
  }
  return best;
}

}  // namespace

TEST_SUITE_BEGIN("multigraph");

TEST_CASE("cheapest transfer edge per ordered pair") {
  const auto inst = make_instance({2, 2}, {PenaltySpec::constant(5), PenaltySpec::constant(5)},
                                  {{10, 14}, {10, 12}});
  Allotment a = assignment_from(inst, {0, 0});
  TransferHeapSet heaps = build_heaps(inst, a);

  auto edge = heaps.min_transfer_edge(0, 1);
  REQUIRE(edge.has_value());
  CHECK(edge->weight == 2);  // d1 beats d0's 4
  CHECK(edge->demand == 1);
  CHECK(edge->from == 0);
  CHECK(edge->to == 1);
  CHECK_FALSE(heaps.min_transfer_edge(1, 0).has_value());

  a.move(1, 1);
  heaps.on_demand_moved(inst, 1, 1);
  edge = heaps.min_transfer_edge(0, 1);
  REQUIRE(edge.has_value());
  CHECK(edge->weight == 4);
  CHECK(edge->demand == 0);
  auto back = heaps.min_transfer_edge(1, 0);
  REQUIRE(back.has_value());
  CHECK(back->weight == -2);
  CHECK(back->demand == 1);

  a.unassign(0);
  heaps.on_demand_removed(0);
  CHECK_FALSE(heaps.min_transfer_edge(0, 1).has_value());
}

TEST_CASE("demands added later join their heaps") {
  const auto inst = make_i1();
  Allotment a(2, 3);
  TransferHeapSet heaps(2, 0);
  for (int d = 0; d < 3; ++d) {
    a.place(d, 1);
    heaps.on_demand_added(inst, d, 1);
  }
  const auto edge = heaps.min_transfer_edge(1, 0);
  REQUIRE(edge.has_value());
  CHECK(edge->weight == -4);  // d0 gains most from moving to S0: 1 - 5
  CHECK(edge->demand == 0);
}

TEST_CASE("penalty edge weights follow occupancy") {
  const auto inst = make_i1();

  // Empty centers trade freely: 0 - 0.
  const Allotment calm = assignment_from(inst, {-1, -1, -1});
  CHECK(penalty_edge_weight(inst, calm, 0, 1) == Cost::finite(0));
  CHECK(penalty_edge_weight(inst, calm, 1, 0) == Cost::finite(0));

  // Both centers at capacity 1: gaining a demand costs q(1) = 10 either way.
  const Allotment snug = assignment_from(inst, {0, 1, -1});
  CHECK(penalty_edge_weight(inst, snug, 0, 1) == Cost::finite(10));
  CHECK(penalty_edge_weight(inst, snug, 1, 0) == Cost::finite(10));

  // Everyone on S0: entering S1 is free, S0 sheds a 10.
  const Allotment crowded = assignment_from(inst, {0, 0, 0});
  CHECK(penalty_edge_weight(inst, crowded, 1, 0) == Cost::finite(-10));
  CHECK(penalty_edge_weight(inst, crowded, 0, 1) == Cost::finite(10));

  // Infinite penalties surface as infinite weights.
  const auto reduced = reduce_no_overload(make_i1(Mode::HardCapacity));
  const Allotment full = assignment_from(reduced, {0, 1, 2});
  CHECK(penalty_edge_weight(reduced, full, 0, 2) == Cost::infinite());
  CHECK(penalty_edge_weight(reduced, full, 2, 0) == Cost::finite(0));
}

TEST_CASE("heap minima match linear scans through churn") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = test::random_small(rng, {.max_k = 4, .max_n = 12});
    const int k = inst.center_count();
    const int n = inst.demand_count();
    Allotment a(k, n);
    TransferHeapSet heaps(k, 0);
    std::vector<bool> live(static_cast<std::size_t>(n), false);

    for (int step = 0; step < 300; ++step) {
      const int d = static_cast<int>(test::pick(rng, 0, n - 1));
      const int c = static_cast<int>(test::pick(rng, 0, k - 1));
      if (!live[static_cast<std::size_t>(d)]) {
        a.place(d, c);
        heaps.on_demand_added(inst, d, c);
        live[static_cast<std::size_t>(d)] = true;
      } else if (test::pick(rng, 0, 3) == 0) {
        a.unassign(d);
        heaps.on_demand_removed(d);
        live[static_cast<std::size_t>(d)] = false;
      } else {
        a.move(d, c);
        heaps.on_demand_moved(inst, d, c);
      }
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
          if (i == j) continue;
          const auto fast = heaps.min_transfer_edge(i, j);
          const auto slow = scan_min_edge(inst, a, i, j);
          REQUIRE(fast.has_value() == slow.has_value());
          if (fast) {
            CHECK(fast->weight == slow->weight);
            CHECK(fast->demand == slow->demand);
          }
        }
    }
  }
}

TEST_SUITE_END();
