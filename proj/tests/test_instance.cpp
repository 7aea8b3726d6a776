#include <doctest.h>

#include <random>
#include <sstream>

#include "helpers.hpp"
#include "lbdd/allotment.hpp"
#include "lbdd/instance.hpp"
#include "lbdd/oracle.hpp"
#include "lbdd/solver.hpp"

using namespace lbdd;
using test::assignment_from;
using test::make_i1;
using test::make_instance;

TEST_SUITE_BEGIN("instance");

TEST_CASE("cost arithmetic keeps infinite and finite parts separate") {
  const Cost a = Cost::finite(5);
  const Cost b = Cost::infinite();
  CHECK(a + a == Cost::finite(10));
  CHECK((b + a).inf == 1);
  CHECK((b + a).fin == 5);
  CHECK(b - b == Cost::finite(0));
  CHECK(a < b);
  CHECK(-b < a);
  CHECK((a - Cost::finite(7)).is_negative());
  CHECK_FALSE(b.is_finite());
  std::ostringstream os;
  os << Cost::finite(3) << ' ' << Cost::infinite();
  CHECK(os.str() == "3 infinite");
}

TEST_CASE("penalty forms evaluate q(level)") {
  CHECK(PenaltySpec::constant(10).at(1) == Cost::finite(10));
  CHECK(PenaltySpec::constant(10).at(7) == Cost::finite(10));
  CHECK(PenaltySpec::linear(5, 2).at(1) == Cost::finite(5));
  CHECK(PenaltySpec::linear(5, 2).at(3) == Cost::finite(9));
  const auto table = PenaltySpec::table({3, 7});
  CHECK(table.at(1) == Cost::finite(3));
  CHECK(table.at(2) == Cost::finite(7));
  CHECK(table.at(5) == Cost::finite(7));  // repeats the last value
  CHECK(PenaltySpec::infinite().at(1) == Cost::infinite());
  CHECK(PenaltySpec::zero().at(4) == Cost::finite(0));
}

TEST_CASE("marginal penalty charges only beyond effective capacity") {
  auto inst = make_instance({3}, {PenaltySpec::linear(5, 2)}, {});
  CHECK(marginal_penalty(inst, 0, 3) == Cost::finite(0));
  CHECK(marginal_penalty(inst, 0, 4) == Cost::finite(5));
  CHECK(marginal_penalty(inst, 0, 6) == Cost::finite(9));
  CHECK(marginal_penalty(inst, 0, 0) == Cost::finite(0));
  CHECK(marginal_penalty(inst, 0, -1) == Cost::finite(0));

  inst.centers[0].penalty_shift = 1;  // right shift: charging starts later
  CHECK(marginal_penalty(inst, 0, 4) == Cost::finite(0));
  CHECK(marginal_penalty(inst, 0, 5) == Cost::finite(5));
  inst.centers[0].penalty_shift = -2;
  CHECK(marginal_penalty(inst, 0, 2) == Cost::finite(5));
}

TEST_CASE("penalty block sums the overloaded levels") {
  const auto inst = make_instance({1}, {PenaltySpec::constant(10)}, {});
  CHECK(penalty_block(inst, 0, 1) == Cost::finite(0));
  CHECK(penalty_block(inst, 0, 3) == Cost::finite(20));
  const auto lin = make_instance({2}, {PenaltySpec::linear(5, 2)}, {});
  CHECK(penalty_block(lin, 0, 5) == Cost::finite(5 + 7 + 9));

  // A left shift below zero capacity must not bill occupancy levels <= 0;
  // the block stays the sum of marginals, which vanish there.
  auto deep = make_instance({0}, {PenaltySpec::linear(4, 1)}, {});
  deep.centers[0].penalty_shift = -1;
  CHECK(penalty_block(deep, 0, 0) == Cost::finite(0));
  CHECK(penalty_block(deep, 0, 1) == marginal_penalty(deep, 0, 1));
  CHECK(penalty_block(deep, 0, 2) == Cost::finite(5 + 6));
}

TEST_CASE("validation rejects malformed instances") {
  CHECK_THROWS_AS(make_instance({1}, {PenaltySpec::constant(10)}, {{0}}), Error);
  CHECK_THROWS_AS(make_instance({1}, {PenaltySpec::constant(0)}, {{1}}), Error);
  CHECK_THROWS_AS(make_instance({1}, {PenaltySpec::table({5, 3})}, {{1}}), Error);
  CHECK_THROWS_AS(make_instance({1}, {PenaltySpec::linear(2, -1)}, {{1}}), Error);
  CHECK_THROWS_AS(make_instance({-1}, {PenaltySpec::constant(1)}, {{1}}), Error);
  CHECK_THROWS_AS(make_instance({1}, {PenaltySpec::constant(1)}, {{1, 2}}), Error);
  CHECK_THROWS_AS(make_instance({1}, {PenaltySpec::infinite()}, {{1}}), Error);
  CHECK_THROWS_AS(make_instance({1}, {PenaltySpec::zero()}, {{1}}), Error);
  CHECK_THROWS_AS(make_instance({1}, {PenaltySpec::constant(1)}, {{1}}, Mode::HardCapacity), Error);
  CHECK_THROWS_AS(validate_instance(ProblemInstance{}), Error);

  ProblemInstance dup;
  dup.centers = {ServiceCenter{0, 1, PenaltySpec::constant(1), 0},
                 ServiceCenter{0, 1, PenaltySpec::constant(1), 0}};
  dup.cost = CostMatrix(2);
  CHECK_THROWS_AS(validate_instance(std::move(dup)), Error);
}

TEST_CASE("error codes are preserved") {
  try {
    make_instance({1}, {PenaltySpec::constant(10)}, {{0}});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonPositiveCost);
  }
  try {
    make_instance({1}, {PenaltySpec::table({5, 3})}, {{1}});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonMonotonePenalty);
  }
}

TEST_CASE("objective sums assignment costs and penalty blocks") {
  const auto inst = make_i1();
  CHECK(objective_cost(inst, assignment_from(inst, {0, 0, 0})) == Cost::finite(29));
  CHECK(objective_cost(inst, assignment_from(inst, {1, 1, 0})) == Cost::finite(25));
  CHECK(objective_cost(inst, assignment_from(inst, {0, 0, 1})) == Cost::finite(16));

  const auto partial = assignment_from(inst, {0, -1, 1});
  CHECK_THROWS_AS(objective_cost(inst, partial), Error);
  CHECK(objective_partial(inst, partial) == Cost::finite(1 + 3));
}

TEST_CASE("objective is path independent across assignment orders") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = test::random_small(rng);
    std::vector<int> map(static_cast<std::size_t>(inst.demand_count()));
    for (auto& c : map) c = static_cast<int>(test::pick(rng, 0, inst.center_count() - 1));
    const Cost direct = objective_cost(inst, assignment_from(inst, map));

    // Same multiset of placements built one demand at a time, billing each
    // marginal as it lands; must agree with the closed-form sum.
    Allotment a(inst.center_count(), inst.demand_count());
    Cost incremental{};
    for (std::size_t d = 0; d < map.size(); ++d) {
      a.place(static_cast<int>(d), map[d]);
      incremental += Cost::finite(inst.cost.at(static_cast<int>(d), map[d])) +
                     marginal_penalty(inst, map[d], a.occupancy(map[d]));
    }
    CHECK(direct == incremental);
  }
}

TEST_CASE("no-overload reduction appends an overflow center") {
  const auto hard = make_i1(Mode::HardCapacity);
  const auto reduced = reduce_no_overload(hard);
  REQUIRE(reduced.center_count() == 3);
  CHECK(reduced.mode == Mode::OverloadAllowed);
  CHECK(reduced.virtual_center == 2);
  CHECK(reduced.centers[0].penalty.form == PenaltySpec::Form::Infinite);
  CHECK(reduced.centers[1].penalty.form == PenaltySpec::Form::Infinite);
  CHECK(reduced.centers[2].penalty.form == PenaltySpec::Form::Zero);
  CHECK(reduced.centers[2].capacity == 3);
  for (int d = 0; d < 3; ++d) CHECK(reduced.cost.at(d, 2) == 7);  // max entry 6, plus one

  CHECK_THROWS_AS(reduce_no_overload(make_i1()), Error);
}

TEST_CASE("reduction preserves the hard-capacity optimum") {
  // Capacity suffices: the real center stays cheaper than the overflow one.
  const auto tiny = make_instance({1}, {PenaltySpec::infinite()}, {{3}}, Mode::HardCapacity);
  const auto reduced = reduce_no_overload(tiny);
  CHECK(solve(reduced).objective == Cost::finite(3));

  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 120; ++trial) {
    test::SmallParams p;
    p.hard = true;
    p.max_n = 6;
    const auto inst = test::random_small(rng, p);
    const auto via_reduction = solve_hard_capacity(inst);
    const auto expected = exhaustive_solve(inst);
    CHECK(via_reduction.objective == expected.objective);
  }
}

TEST_SUITE_END();
