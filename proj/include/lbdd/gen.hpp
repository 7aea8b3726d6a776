#pragma once

#include <cstdint>
#include <string>

#include "lbdd/instance.hpp"

namespace lbdd {

// Deterministic instance generator: the same parameters and seed always
// produce the same instance (mt19937_64 with plain modulo reduction, no
// library distributions).

enum class CostModel { Uniform, Planar };

struct CapacityPolicy {
  enum class Kind { Tight, Ample, Zero, Fixed, Range };
  Kind kind = Kind::Tight;
  std::int64_t fixed = 0;  // Fixed
  std::int64_t lo = 0;     // Range
  std::int64_t hi = 0;

  static CapacityPolicy tight() { return {Kind::Tight, 0, 0, 0}; }
  static CapacityPolicy ample() { return {Kind::Ample, 0, 0, 0}; }
  static CapacityPolicy zero() { return {Kind::Zero, 0, 0, 0}; }
  static CapacityPolicy fixed_cap(std::int64_t c) { return {Kind::Fixed, c, 0, 0}; }
  static CapacityPolicy range(std::int64_t lo, std::int64_t hi) { return {Kind::Range, 0, lo, hi}; }
};

enum class PenaltyPolicy { Constant, Linear, Table, Mixed };

struct GenParams {
  int k = 2;
  int n = 1;
  CostModel cost_model = CostModel::Uniform;
  std::int64_t max_cost = 100;  // Uniform: costs in [1, max_cost]
  std::int64_t width = 1000;    // Planar: coordinates in [0, width)
  CapacityPolicy capacity = CapacityPolicy::tight();
  PenaltyPolicy penalty = PenaltyPolicy::Mixed;
  bool hard = false;  // infinite penalties, hard_capacity mode
  std::uint64_t seed = 1;
};

ProblemInstance generate_instance(const GenParams& params);

// "tight", "ample", "zero", "fixed:<c>", "range:<lo>:<hi>"
CapacityPolicy parse_capacity_policy(const std::string& text);
// "constant", "linear", "table", "mixed"
PenaltyPolicy parse_penalty_policy(const std::string& text);

}  // namespace lbdd
