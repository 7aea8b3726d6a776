#pragma once

#include <optional>
#include <span>

#include "lbdd/allotment.hpp"
#include "lbdd/loop_search.hpp"
#include "lbdd/transfer_heaps.hpp"

namespace lbdd {

struct EngineStats {
  std::int64_t operations = 0;
  std::int64_t loops_removed = 0;
  std::int64_t relaxation_rounds = 0;
  int last_op_loop_removals = 0;
  int max_insert_loop_removals = 0;  // bound: 2 (one per insertion step)
  int max_update_loop_removals = 0;  // bound: 1 (remove / capacity / shift)
};

// Incrementally maintained optimal allotment. Every public operation applies
// one elementary change and restores optimality by removing at most the
// prescribed number of negative loops (two for insertions, one otherwise).
class EngineState {
 public:
  // Takes the centers of `base`; its cost matrix must be empty. Demands
  // enter through insert_demand.
  explicit EngineState(ProblemInstance base);

  // Appends the cost row, assigns the new demand to its cheapest-cost
  // center, and rebalances in two steps: first the demand itself (occupancy
  // effect deferred, most negative loop through the entry center removed),
  // then the occupancy unit (most negative loop starting there removed).
  // Returns the demand id.
  int insert_demand(std::span<const std::int64_t> cost_row);

  void remove_demand(int demand);

  // delta must be +1 or -1.
  void change_capacity(int center, int delta);

  enum class Shift { Left, Right };
  void shift_penalty(int center, Shift dir);

  const ProblemInstance& instance() const { return inst_; }
  const Allotment& allotment() const { return allot_; }
  Cost objective() const { return objective_; }
  Cost recompute_objective() const { return objective_partial(inst_, allot_); }
  const EngineStats& stats() const { return stats_; }

  // Scans all anchors with the through variant; nullopt certifies the
  // current allotment optimal.
  std::optional<Loop> find_any_negative_loop();

  // Debug gate: after every operation, re-scan for residual negative loops
  // and cross-check the incremental objective. Violations throw.
  void set_verify_after_each(bool on) { verify_after_each_ = on; }

 private:
  bool remove_loop_at(int anchor, LoopVariant variant);
  void begin_op();
  void end_op(bool is_insert);

  ProblemInstance inst_;
  Allotment allot_;
  TransferHeapSet heaps_;
  Cost objective_{};
  EngineStats stats_;
  bool verify_after_each_ = false;
};

}  // namespace lbdd
