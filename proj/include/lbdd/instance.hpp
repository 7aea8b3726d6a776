#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lbdd/cost.hpp"

namespace lbdd {

enum class Errc {
  NonPositiveCost,
  NonMonotonePenalty,
  DimensionMismatch,
  DuplicateId,
  UnassignedDemand,
  StaleLoop,
  UnknownDemand,
  BadCostRow,
  NegativeCapacity,
  InfinitePenaltyImmutable,
  NegativeCycleOffAnchor,
  TooLarge,
  WrongMode,
  ParseError,
  InvalidLoop,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string what) : std::runtime_error(std::move(what)), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Overload penalty of a center, as the sequence q(1), q(2), ... of marginal
// charges for the 1st, 2nd, ... unit beyond capacity. Values must be positive
// and nondecreasing. Table specs repeat their last value past the end.
// Infinite marks a center that must never overload (hard capacity); Zero is
// used internally for the overflow center of the no-overload reduction.
struct PenaltySpec {
  enum class Form { Constant, Linear, Table, Infinite, Zero };

  Form form = Form::Constant;
  std::int64_t base = 0;  // Constant value / Linear intercept
  std::int64_t step = 0;  // Linear increment
  std::vector<std::int64_t> values;

  static PenaltySpec constant(std::int64_t v) { return {Form::Constant, v, 0, {}}; }
  static PenaltySpec linear(std::int64_t b, std::int64_t s) { return {Form::Linear, b, s, {}}; }
  static PenaltySpec table(std::vector<std::int64_t> vs) {
    return {Form::Table, 0, 0, std::move(vs)};
  }
  static PenaltySpec infinite() { return {Form::Infinite, 0, 0, {}}; }
  static PenaltySpec zero() { return {Form::Zero, 0, 0, {}}; }

  // q(level) for level >= 1.
  Cost at(std::int64_t level) const;

  bool operator==(const PenaltySpec&) const = default;
};

struct ServiceCenter {
  int id = -1;
  std::int64_t capacity = 0;
  PenaltySpec penalty;
  // Net shift of the penalty curve along the occupancy axis: +1 per right
  // shift, -1 per left shift. Overload charging starts after
  // capacity + penalty_shift units instead of capacity.
  std::int64_t penalty_shift = 0;

  std::int64_t effective_capacity() const { return capacity + penalty_shift; }

  bool operator==(const ServiceCenter&) const = default;
};

// Dense demand x center assignment costs, row-major. Rows may be appended
// (demand insertion); existing entries never change.
class CostMatrix {
 public:
  CostMatrix() = default;
  explicit CostMatrix(int cols) : cols_(cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::int64_t at(int d, int s) const { return cells_[static_cast<std::size_t>(d) * cols_ + s]; }
  std::span<const std::int64_t> row(int d) const {
    return {cells_.data() + static_cast<std::size_t>(d) * cols_, static_cast<std::size_t>(cols_)};
  }
  void append_row(std::span<const std::int64_t> row);
  std::int64_t max_entry() const;  // 0 when empty

  bool operator==(const CostMatrix&) const = default;

 private:
  int cols_ = 0;
  int rows_ = 0;
  std::vector<std::int64_t> cells_;
};

enum class Mode { OverloadAllowed, HardCapacity };

struct ProblemInstance {
  std::vector<ServiceCenter> centers;
  CostMatrix cost;
  Mode mode = Mode::OverloadAllowed;
  // Set on instances produced by reduce_no_overload: index of the appended
  // overflow center.
  std::optional<int> virtual_center;

  int center_count() const { return static_cast<int>(centers.size()); }
  int demand_count() const { return cost.rows(); }

  bool operator==(const ProblemInstance&) const = default;
};

class Allotment;

// Checks ids, dimensions, cost positivity and penalty shape; returns the
// instance unchanged on success. File-level rules: overload_allowed centers
// need finite penalties, hard_capacity centers must all be infinite.
ProblemInstance validate_instance(ProblemInstance raw);

// Marginal penalty of center j at occupancy t: 0 while t is within the
// (shift-adjusted) capacity, q(t - capacity) beyond it. t <= 0 yields 0.
Cost marginal_penalty(const ProblemInstance& inst, int j, std::int64_t t);

// Sum of marginal penalties of center j at occupancy levels 1..occupancy.
Cost penalty_block(const ProblemInstance& inst, int j, std::int64_t occupancy);

// Assignment costs plus cumulative marginal penalties. Every demand of the
// instance must be assigned; throws UnassignedDemand otherwise.
Cost objective_cost(const ProblemInstance& inst, const Allotment& a);

// Same sum restricted to the demands that are currently assigned.
Cost objective_partial(const ProblemInstance& inst, const Allotment& a);

// Turns a hard-capacity instance into an equivalent overload-allowed one:
// real centers get infinite penalties, and an overflow center is appended
// with column cost max(CM)+1, capacity n and zero penalty. Optima of the
// result, restricted to real centers, solve the hard-capacity problem;
// demands on the overflow center are the unassigned ones.
ProblemInstance reduce_no_overload(const ProblemInstance& inst);

}  // namespace lbdd
