#include "lbdd/instance.hpp"

#include <algorithm>
#include <cassert>

#include "lbdd/allotment.hpp"

namespace lbdd {

Cost PenaltySpec::at(std::int64_t level) const {
  assert(level >= 1);
  switch (form) {
    case Form::Constant:
      return Cost::finite(base);
    case Form::Linear:
      return Cost::finite(base + (level - 1) * step);
    case Form::Table: {
      auto idx = std::min<std::int64_t>(level, static_cast<std::int64_t>(values.size()));
      return Cost::finite(values[static_cast<std::size_t>(idx - 1)]);
    }
    case Form::Infinite:
      return Cost::infinite();
    case Form::Zero:
      return Cost::finite(0);
  }
  return Cost::finite(0);
}

void CostMatrix::append_row(std::span<const std::int64_t> row) {
  if (static_cast<int>(row.size()) != cols_)
    throw Error(Errc::DimensionMismatch, "cost row has " + std::to_string(row.size()) +
                                             " entries, expected " + std::to_string(cols_));
  cells_.insert(cells_.end(), row.begin(), row.end());
  ++rows_;
}

std::int64_t CostMatrix::max_entry() const {
  std::int64_t m = 0;
  for (auto v : cells_) m = std::max(m, v);
  return m;
}

namespace {

void validate_penalty(const PenaltySpec& p, int center) {
  const std::string where = "center " + std::to_string(center);
  switch (p.form) {
    case PenaltySpec::Form::Constant:
      if (p.base < 1)
        throw Error(Errc::NonMonotonePenalty, where + ": constant penalty must be positive");
      break;
    case PenaltySpec::Form::Linear:
      if (p.base < 1 || p.step < 0)
        throw Error(Errc::NonMonotonePenalty,
                    where + ": linear penalty needs positive base and nonnegative step");
      break;
    case PenaltySpec::Form::Table: {
      if (p.values.empty())
        throw Error(Errc::NonMonotonePenalty, where + ": empty penalty table");
      std::int64_t prev = 0;
      for (auto v : p.values) {
        if (v < 1) throw Error(Errc::NonMonotonePenalty, where + ": penalty values must be positive");
        if (v < prev)
          throw Error(Errc::NonMonotonePenalty, where + ": penalty table must be nondecreasing");
        prev = v;
      }
      break;
    }
    case PenaltySpec::Form::Infinite:
    case PenaltySpec::Form::Zero:
      break;
  }
}

}  // namespace

ProblemInstance validate_instance(ProblemInstance raw) {
  const int k = raw.center_count();
  if (k < 1) throw Error(Errc::DimensionMismatch, "instance needs at least one center");
  std::vector<char> seen(static_cast<std::size_t>(k), 0);
  for (const auto& c : raw.centers) {
    if (c.id < 0 || c.id >= k)
      throw Error(Errc::DuplicateId, "center id " + std::to_string(c.id) + " outside 0.." +
                                         std::to_string(k - 1));
    if (seen[static_cast<std::size_t>(c.id)])
      throw Error(Errc::DuplicateId, "duplicate center id " + std::to_string(c.id));
    seen[static_cast<std::size_t>(c.id)] = 1;
    if (c.capacity < 0)
      throw Error(Errc::NegativeCapacity, "center " + std::to_string(c.id) + " has negative capacity");
    if (raw.mode == Mode::HardCapacity) {
      if (c.penalty.form != PenaltySpec::Form::Infinite)
        throw Error(Errc::WrongMode, "center " + std::to_string(c.id) +
                                         ": hard_capacity mode requires infinite penalties");
    } else {
      if (c.penalty.form == PenaltySpec::Form::Infinite || c.penalty.form == PenaltySpec::Form::Zero)
        throw Error(Errc::WrongMode, "center " + std::to_string(c.id) +
                                         ": overload_allowed mode requires a finite penalty");
      validate_penalty(c.penalty, c.id);
    }
  }
  std::sort(raw.centers.begin(), raw.centers.end(),
            [](const ServiceCenter& a, const ServiceCenter& b) { return a.id < b.id; });
  if (raw.cost.cols() != k)
    throw Error(Errc::DimensionMismatch, "cost matrix has " + std::to_string(raw.cost.cols()) +
                                             " columns, expected " + std::to_string(k));
  for (int d = 0; d < raw.demand_count(); ++d)
    for (int s = 0; s < k; ++s)
      if (raw.cost.at(d, s) < 1)
        throw Error(Errc::NonPositiveCost, "cost of demand " + std::to_string(d) + " at center " +
                                               std::to_string(s) + " must be positive");
  return raw;
}

Cost marginal_penalty(const ProblemInstance& inst, int j, std::int64_t t) {
  const auto& c = inst.centers[static_cast<std::size_t>(j)];
  if (t <= c.effective_capacity() || t <= 0) return Cost::finite(0);
  return c.penalty.at(t - c.effective_capacity());
}

Cost penalty_block(const ProblemInstance& inst, int j, std::int64_t occupancy) {
  const auto& c = inst.centers[static_cast<std::size_t>(j)];
  Cost sum{};
  // Marginals vanish at t <= 0, so a negative effective capacity (deep left
  // shift) must not extend the sum below the first real occupancy level.
  for (std::int64_t t = std::max<std::int64_t>(c.effective_capacity() + 1, 1); t <= occupancy; ++t)
    sum += c.penalty.at(t - c.effective_capacity());
  return sum;
}

namespace {

Cost objective_sum(const ProblemInstance& inst, const Allotment& a, bool require_complete) {
  Cost sum{};
  for (int d = 0; d < inst.demand_count(); ++d) {
    if (!a.assigned(d)) {
      if (require_complete)
        throw Error(Errc::UnassignedDemand, "demand " + std::to_string(d) + " is unassigned");
      continue;
    }
    sum += Cost::finite(inst.cost.at(d, a.center_of(d)));
  }
  for (int j = 0; j < inst.center_count(); ++j) sum += penalty_block(inst, j, a.occupancy(j));
  return sum;
}

}  // namespace

Cost objective_cost(const ProblemInstance& inst, const Allotment& a) {
  return objective_sum(inst, a, true);
}

Cost objective_partial(const ProblemInstance& inst, const Allotment& a) {
  return objective_sum(inst, a, false);
}

ProblemInstance reduce_no_overload(const ProblemInstance& inst) {
  if (inst.mode != Mode::HardCapacity)
    throw Error(Errc::WrongMode, "reduction applies to hard_capacity instances");
  const int k = inst.center_count();
  const int n = inst.demand_count();
  ProblemInstance out;
  out.mode = Mode::OverloadAllowed;
  out.virtual_center = k;
  out.centers = inst.centers;
  for (auto& c : out.centers) c.penalty = PenaltySpec::infinite();
  out.centers.push_back(ServiceCenter{k, n, PenaltySpec::zero(), 0});
  const std::int64_t overflow_cost = inst.cost.max_entry() + 1;
  out.cost = CostMatrix(k + 1);
  std::vector<std::int64_t> row(static_cast<std::size_t>(k) + 1);
  for (int d = 0; d < n; ++d) {
    auto src = inst.cost.row(d);
    std::copy(src.begin(), src.end(), row.begin());
    row.back() = overflow_cost;
    out.cost.append_row(row);
  }
  return out;
}

}  // namespace lbdd
