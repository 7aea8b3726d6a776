#include <doctest.h>

#include <random>
#include <vector>

#include "helpers.hpp"
#include "lbdd/engine.hpp"
#include "lbdd/oracle.hpp"

using namespace lbdd;
using test::make_i1;
using test::make_instance;

namespace {

ProblemInstance empty_like(const ProblemInstance& inst) {
  ProblemInstance base = inst;
  base.cost = CostMatrix(inst.center_count());
  return base;
}

// The engine keeps rows of removed demands; oracle comparisons need an
// instance over the live ones only.
ProblemInstance live_instance(const EngineState& engine) {
  ProblemInstance inst = empty_like(engine.instance());
  const auto& a = engine.allotment();
  for (int d = 0; d < a.demand_slots(); ++d)
    if (a.assigned(d)) inst.cost.append_row(engine.instance().cost.row(d));
  return inst;
}

Cost oracle_objective(const EngineState& engine) {
  return exhaustive_solve(live_instance(engine)).objective;
}

}  // namespace

TEST_SUITE_BEGIN("dynamic");

TEST_CASE("insertions maintain the optimum step by step") {
  EngineState engine(empty_like(make_i1()));
  engine.set_verify_after_each(true);

  CHECK(engine.insert_demand(std::vector<std::int64_t>{1, 5}) == 0);
  CHECK(engine.objective() == Cost::finite(1));

  // Entry center S0 (2 < 4) overloads; the second step sheds d1 to S1.
  CHECK(engine.insert_demand(std::vector<std::int64_t>{2, 4}) == 1);
  CHECK(engine.objective() == Cost::finite(5));
  CHECK(engine.allotment().center_of(0) == 0);
  CHECK(engine.allotment().center_of(1) == 1);

  // Entry center S1 (3 < 6); the rebalance pulls d1 back to S0.
  CHECK(engine.insert_demand(std::vector<std::int64_t>{6, 3}) == 2);
  CHECK(engine.objective() == Cost::finite(16));
  CHECK(engine.allotment().center_of(0) == 0);
  CHECK(engine.allotment().center_of(1) == 0);
  CHECK(engine.allotment().center_of(2) == 1);

  CHECK(engine.stats().operations == 3);
  CHECK(engine.stats().loops_removed == 2);  // one for each crowded insert
  CHECK(engine.stats().max_insert_loop_removals <= 2);
  CHECK_FALSE(engine.find_any_negative_loop().has_value());
}

TEST_CASE("entry center ties break toward the smaller id") {
  const auto inst = make_instance({1, 1}, {PenaltySpec::constant(10), PenaltySpec::constant(10)}, {});
  EngineState engine(inst);
  engine.insert_demand(std::vector<std::int64_t>{5, 5});
  CHECK(engine.allotment().center_of(0) == 0);
}

TEST_CASE("removal rolls the objective back") {
  EngineState engine(empty_like(make_i1()));
  engine.set_verify_after_each(true);
  engine.insert_demand(std::vector<std::int64_t>{1, 5});
  engine.insert_demand(std::vector<std::int64_t>{2, 4});
  engine.insert_demand(std::vector<std::int64_t>{6, 3});

  engine.remove_demand(2);
  CHECK(engine.objective() == Cost::finite(5));
  CHECK(engine.objective() == oracle_objective(engine));

  // Shedding load from the overloaded S0 leaves the rest in place.
  const auto before = engine.stats().loops_removed;
  engine.insert_demand(std::vector<std::int64_t>{6, 3});
  CHECK(engine.objective() == Cost::finite(16));
  engine.remove_demand(0);
  CHECK(engine.stats().loops_removed == before + 1);  // the insert's loop only
  CHECK(engine.objective() == Cost::finite(2 + 3));
  CHECK(engine.objective() == oracle_objective(engine));

  CHECK_THROWS_AS(engine.remove_demand(0), Error);   // already gone
  CHECK_THROWS_AS(engine.remove_demand(99), Error);  // never existed
  CHECK(engine.stats().max_update_loop_removals <= 1);
}

TEST_CASE("capacity growth attracts demand") {
  EngineState engine(empty_like(make_i1()));
  engine.set_verify_after_each(true);
  engine.insert_demand(std::vector<std::int64_t>{1, 5});
  engine.insert_demand(std::vector<std::int64_t>{2, 4});
  engine.insert_demand(std::vector<std::int64_t>{6, 3});
  REQUIRE(engine.objective() == Cost::finite(16));

  engine.change_capacity(1, +1);  // S1 can now hold d1 penalty-free
  CHECK(engine.objective() == Cost::finite(8));
  CHECK(engine.allotment().center_of(1) == 1);
  CHECK(engine.objective() == oracle_objective(engine));

  engine.change_capacity(1, -1);
  CHECK(engine.objective() == Cost::finite(16));
  CHECK(engine.objective() == oracle_objective(engine));

  CHECK_THROWS_AS(engine.change_capacity(1, +2), Error);
  CHECK_THROWS_AS(engine.change_capacity(7, +1), Error);
  auto& zeroed = engine;
  zeroed.change_capacity(1, -1);
  CHECK_THROWS_AS(zeroed.change_capacity(1, -1), Error);  // below zero
  CHECK(engine.stats().max_update_loop_removals <= 1);
}

TEST_CASE("penalty shifts mirror capacity changes") {
  EngineState engine(empty_like(make_i1()));
  engine.set_verify_after_each(true);
  engine.insert_demand(std::vector<std::int64_t>{1, 5});
  engine.insert_demand(std::vector<std::int64_t>{2, 4});
  engine.insert_demand(std::vector<std::int64_t>{6, 3});

  engine.shift_penalty(1, EngineState::Shift::Right);
  CHECK(engine.objective() == Cost::finite(8));  // same effect as capacity +1
  engine.shift_penalty(1, EngineState::Shift::Left);
  CHECK(engine.objective() == Cost::finite(16));

  // Left shift makes the first unit beyond capacity-1 chargeable.
  engine.shift_penalty(0, EngineState::Shift::Left);
  CHECK(engine.objective() == oracle_objective(engine));
  engine.shift_penalty(0, EngineState::Shift::Right);
  CHECK(engine.objective() == Cost::finite(16));
}

TEST_CASE("infinite penalties cannot shift") {
  const auto reduced = reduce_no_overload(make_i1(Mode::HardCapacity));
  EngineState engine(empty_like(reduced));
  CHECK_THROWS_AS(engine.shift_penalty(0, EngineState::Shift::Right), Error);
  try {
    engine.shift_penalty(1, EngineState::Shift::Left);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InfinitePenaltyImmutable);
  }
}

TEST_CASE("engine rejects bad construction and rows") {
  CHECK_THROWS_AS(EngineState{make_i1()}, Error);                      // demands present
  CHECK_THROWS_AS(EngineState{make_i1(Mode::HardCapacity)}, Error);    // wrong mode
  EngineState engine(empty_like(make_i1()));
  CHECK_THROWS_AS(engine.insert_demand(std::vector<std::int64_t>{1}), Error);
  CHECK_THROWS_AS(engine.insert_demand(std::vector<std::int64_t>{1, 0}), Error);
  CHECK(engine.objective() == Cost::finite(0));
  CHECK(engine.allotment().assigned_count() == 0);
}

TEST_CASE("mixed event streams track the oracle") {
  std::mt19937_64 rng(51);
  for (int stream = 0; stream < 25; ++stream) {
    const auto inst = test::random_small(rng, {.max_n = 1});
    EngineState engine(empty_like(inst));
    engine.set_verify_after_each(true);
    const int k = inst.center_count();
    std::vector<int> live;
    int next_id = 0;

    for (int event = 0; event < 60; ++event) {
      const int roll = static_cast<int>(test::pick(rng, 0, 9));
      if ((roll < 5 && live.size() < 7) || live.empty()) {
        std::vector<std::int64_t> row(static_cast<std::size_t>(k));
        for (auto& v : row) v = test::pick(rng, 1, 50);
        engine.insert_demand(row);
        live.push_back(next_id++);
      } else if (roll < 7 && !live.empty()) {
        const auto at = static_cast<std::size_t>(test::pick(rng, 0, static_cast<std::int64_t>(live.size()) - 1));
        engine.remove_demand(live[at]);
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(at));
      } else if (roll < 9) {
        const int c = static_cast<int>(test::pick(rng, 0, k - 1));
        if (test::pick(rng, 0, 1) == 0 || engine.instance().centers[static_cast<std::size_t>(c)].capacity == 0)
          engine.change_capacity(c, +1);
        else
          engine.change_capacity(c, -1);
      } else {
        const int c = static_cast<int>(test::pick(rng, 0, k - 1));
        engine.shift_penalty(c, test::pick(rng, 0, 1) == 0 ? EngineState::Shift::Right
                                                           : EngineState::Shift::Left);
      }
      CHECK(engine.objective() == oracle_objective(engine));
    }
    CHECK(engine.stats().max_insert_loop_removals <= 2);
    CHECK(engine.stats().max_update_loop_removals <= 1);
  }
}

TEST_SUITE_END();
