#pragma once

#include <span>
#include <vector>

#include "lbdd/instance.hpp"

namespace lbdd {

// Demand -> center assignment with per-center member lists and occupancy
// counters. Occupancy normally equals the member count; it diverges only
// inside a two-step insertion, between place_deferred() and settle().
class Allotment {
 public:
  explicit Allotment(int center_count, int demand_count = 0);

  int center_count() const { return static_cast<int>(members_.size()); }
  int demand_slots() const { return static_cast<int>(assign_.size()); }
  int assigned_count() const { return assigned_count_; }

  // Grows the demand tables so ids 0..d become addressable.
  void ensure_demand(int d);

  bool assigned(int d) const { return assign_[d] >= 0; }
  int center_of(int d) const { return assign_[d]; }
  std::span<const int> members(int c) const { return members_[c]; }
  std::int64_t occupancy(int c) const { return occupancy_[c]; }

  void place(int d, int c);
  // Assigns d to c without counting its occupancy yet; the unit is billed by
  // a later settle(c). Loops applied in between keep occupancy bookkeeping
  // per move, so the deficit stays attached to center c.
  void place_deferred(int d, int c);
  void settle(int c) { ++occupancy_[c]; }

  void move(int d, int to);
  void unassign(int d);

 private:
  void attach(int d, int c);
  void detach(int d);

  std::vector<int> assign_;  // -1 = unassigned
  std::vector<int> pos_;     // index of d inside members_[assign_[d]]
  std::vector<std::vector<int>> members_;
  std::vector<std::int64_t> occupancy_;
  int assigned_count_ = 0;
};

struct Transfer {
  int from = -1;
  int to = -1;
  int demand = -1;

  bool operator==(const Transfer&) const = default;
};

// A chain of transfers closed either into a cycle (last target == first
// source) or by a penalty edge running from the chain's last target back to
// its first source. Applying a loop changes the objective by exactly cost.
class Loop {
 public:
  enum class Closure { Cycle, Penalty };

  // Both factories validate shape: nonempty chained transfers, pairwise
  // distinct sources, and for the penalty form a last target that is not a
  // chain source (occupancy accounting would break otherwise).
  static Loop cycle(std::vector<Transfer> transfers, Cost cost);
  static Loop penalty_closed(std::vector<Transfer> transfers, Cost cost);

  const std::vector<Transfer>& transfers() const { return transfers_; }
  Closure closure() const { return closure_; }
  // Penalty closure edge, directed from the center gaining a demand to the
  // center losing one.
  int penalty_from() const { return transfers_.back().to; }
  int penalty_to() const { return transfers_.front().from; }
  Cost cost() const { return cost_; }

 private:
  Loop(std::vector<Transfer> t, Closure c, Cost cost)
      : transfers_(std::move(t)), closure_(c), cost_(cost) {}

  std::vector<Transfer> transfers_;
  Closure closure_;
  Cost cost_;
};

// Moves every transfer's demand from its source to its target, updating
// occupancies. Throws StaleLoop unless each demand still sits at its
// recorded source.
void apply_loop(const ProblemInstance& inst, Allotment& a, const Loop& loop);

}  // namespace lbdd
