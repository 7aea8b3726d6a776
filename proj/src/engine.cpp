#include "lbdd/engine.hpp"

#include <algorithm>
#include <cassert>
#include <string>

namespace lbdd {

EngineState::EngineState(ProblemInstance base)
    : inst_(std::move(base)), allot_(inst_.center_count()), heaps_(inst_.center_count(), 0) {
  if (inst_.mode != Mode::OverloadAllowed)
    throw Error(Errc::WrongMode, "engine operates on overload_allowed instances");
  if (inst_.demand_count() != 0)
    throw Error(Errc::DimensionMismatch, "engine starts from an instance without demands");
}

bool EngineState::remove_loop_at(int anchor, LoopVariant variant) {
  SearchStats st;
  const auto loop = most_negative_loop(inst_, allot_, heaps_, anchor, variant, &st);
  stats_.relaxation_rounds += st.rounds;
  if (!loop) return false;
  apply_loop(inst_, allot_, *loop);
  for (const auto& t : loop->transfers()) heaps_.on_demand_moved(inst_, t.demand, t.to);
  objective_ += loop->cost();
  ++stats_.loops_removed;
  ++stats_.last_op_loop_removals;
  return true;
}

void EngineState::begin_op() {
  stats_.last_op_loop_removals = 0;
  ++stats_.operations;
}

void EngineState::end_op(bool is_insert) {
  auto& mx = is_insert ? stats_.max_insert_loop_removals : stats_.max_update_loop_removals;
  mx = std::max(mx, stats_.last_op_loop_removals);
  if (verify_after_each_) {
    if (find_any_negative_loop())
      throw std::logic_error("negative loop survived an engine operation");
    if (recompute_objective() != objective_)
      throw std::logic_error("incremental objective drifted from recomputation");
  }
}

int EngineState::insert_demand(std::span<const std::int64_t> cost_row) {
  const int k = inst_.center_count();
  if (static_cast<int>(cost_row.size()) != k)
    throw Error(Errc::BadCostRow, "cost row has " + std::to_string(cost_row.size()) +
                                      " entries, expected " + std::to_string(k));
  for (const auto c : cost_row)
    if (c < 1) throw Error(Errc::BadCostRow, "cost row entries must be positive");

  begin_op();
  const int d = inst_.demand_count();
  inst_.cost.append_row(cost_row);
  allot_.ensure_demand(d);
  int entry = 0;
  for (int s = 1; s < k; ++s)
    if (cost_row[s] < cost_row[entry]) entry = s;

  // Step 1: the demand joins its entry center with the occupancy effect
  // deferred, as if it displaced a free unit already counted there.
  allot_.place_deferred(d, entry);
  heaps_.on_demand_added(inst_, d, entry);
  objective_ += Cost::finite(cost_row[entry]);
  remove_loop_at(entry, LoopVariant::Through);

  // Step 2: bill the occupancy unit (it stays at the entry center even if
  // the first loop moved the demand elsewhere).
  allot_.settle(entry);
  objective_ += marginal_penalty(inst_, entry, allot_.occupancy(entry));
  remove_loop_at(entry, LoopVariant::Start);

  end_op(true);
  return d;
}

void EngineState::remove_demand(int demand) {
  if (demand < 0 || demand >= allot_.demand_slots() || !allot_.assigned(demand))
    throw Error(Errc::UnknownDemand, "demand " + std::to_string(demand) + " is not assigned");
  begin_op();
  const int j = allot_.center_of(demand);
  objective_ -= Cost::finite(inst_.cost.at(demand, j));
  objective_ -= marginal_penalty(inst_, j, allot_.occupancy(j));
  allot_.unassign(demand);
  heaps_.on_demand_removed(demand);
  remove_loop_at(j, LoopVariant::Through);
  end_op(false);
}

void EngineState::change_capacity(int center, int delta) {
  if (center < 0 || center >= inst_.center_count())
    throw Error(Errc::DimensionMismatch, "center " + std::to_string(center) + " out of range");
  if (delta != 1 && delta != -1)
    throw Error(Errc::NegativeCapacity, "capacity changes by one unit at a time");
  auto& c = inst_.centers[static_cast<std::size_t>(center)];
  if (c.capacity + delta < 0)
    throw Error(Errc::NegativeCapacity, "center " + std::to_string(center) +
                                            " capacity cannot drop below zero");
  begin_op();
  objective_ -= penalty_block(inst_, center, allot_.occupancy(center));
  c.capacity += delta;
  objective_ += penalty_block(inst_, center, allot_.occupancy(center));
  remove_loop_at(center, LoopVariant::Through);
  end_op(false);
}

void EngineState::shift_penalty(int center, Shift dir) {
  if (center < 0 || center >= inst_.center_count())
    throw Error(Errc::DimensionMismatch, "center " + std::to_string(center) + " out of range");
  auto& c = inst_.centers[static_cast<std::size_t>(center)];
  if (c.penalty.form == PenaltySpec::Form::Infinite)
    throw Error(Errc::InfinitePenaltyImmutable,
                "center " + std::to_string(center) + " has an immutable infinite penalty");
  begin_op();
  objective_ -= penalty_block(inst_, center, allot_.occupancy(center));
  c.penalty_shift += dir == Shift::Right ? 1 : -1;
  objective_ += penalty_block(inst_, center, allot_.occupancy(center));
  remove_loop_at(center, LoopVariant::Through);
  end_op(false);
}

std::optional<Loop> EngineState::find_any_negative_loop() {
  for (int j = 0; j < inst_.center_count(); ++j)
    if (auto l = most_negative_loop(inst_, allot_, heaps_, j, LoopVariant::Through)) return l;
  return std::nullopt;
}

}  // namespace lbdd
