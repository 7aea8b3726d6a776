#include "lbdd/gen.hpp"

#include <cmath>
#include <random>
#include <utility>
#include <vector>

namespace lbdd {
namespace {

struct Rng {
  std::mt19937_64 engine;

  explicit Rng(std::uint64_t seed) : engine(seed) {}

  // Inclusive range; modulo bias is irrelevant for generation purposes and
  // keeps results identical across standard library implementations.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(engine() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

std::vector<std::int64_t> capacities_for(const CapacityPolicy& policy, int k, int n, Rng& rng) {
  std::vector<std::int64_t> caps(static_cast<std::size_t>(k), 0);
  switch (policy.kind) {
    case CapacityPolicy::Kind::Tight:
    case CapacityPolicy::Kind::Ample: {
      // tight: total ceil(0.8 n) forces overloads; ample: ceil(1.2 n).
      const std::int64_t total = policy.kind == CapacityPolicy::Kind::Tight
                                     ? ceil_div(4 * static_cast<std::int64_t>(n), 5)
                                     : ceil_div(6 * static_cast<std::int64_t>(n), 5);
      for (int i = 0; i < k; ++i) caps[static_cast<std::size_t>(i)] = total / k;
      for (std::int64_t i = 0; i < total % k; ++i) ++caps[static_cast<std::size_t>(i)];
      break;
    }
    case CapacityPolicy::Kind::Zero:
      break;
    case CapacityPolicy::Kind::Fixed:
      for (auto& c : caps) c = policy.fixed;
      break;
    case CapacityPolicy::Kind::Range:
      for (auto& c : caps) c = rng.uniform(policy.lo, policy.hi);
      break;
  }
  return caps;
}

PenaltySpec penalty_for(PenaltyPolicy policy, Rng& rng) {
  if (policy == PenaltyPolicy::Mixed)
    policy = static_cast<PenaltyPolicy>(rng.uniform(0, 2));
  switch (policy) {
    case PenaltyPolicy::Constant:
      return PenaltySpec::constant(rng.uniform(1, 20));
    case PenaltyPolicy::Linear:
      return PenaltySpec::linear(rng.uniform(1, 10), rng.uniform(0, 5));
    case PenaltyPolicy::Table: {
      const std::int64_t len = rng.uniform(1, 5);
      std::vector<std::int64_t> values;
      std::int64_t v = rng.uniform(1, 10);
      for (std::int64_t i = 0; i < len; ++i) {
        values.push_back(v);
        v += rng.uniform(0, 5);
      }
      return PenaltySpec::table(std::move(values));
    }
    case PenaltyPolicy::Mixed:
      break;
  }
  return PenaltySpec::constant(1);
}

std::int64_t rounded_isqrt(std::int64_t v) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  // r^2 <= v < (r+1)^2; round to the nearer square root.
  return (v - r * r < (r + 1) * (r + 1) - v) ? r : r + 1;
}

}  // namespace

ProblemInstance generate_instance(const GenParams& params) {
  Rng rng(params.seed);
  ProblemInstance inst;
  inst.mode = params.hard ? Mode::HardCapacity : Mode::OverloadAllowed;

  const auto caps = capacities_for(params.capacity, params.k, params.n, rng);
  for (int i = 0; i < params.k; ++i) {
    ServiceCenter c;
    c.id = i;
    c.capacity = caps[static_cast<std::size_t>(i)];
    c.penalty = params.hard ? PenaltySpec::infinite() : penalty_for(params.penalty, rng);
    inst.centers.push_back(std::move(c));
  }

  inst.cost = CostMatrix(params.k);
  if (params.cost_model == CostModel::Uniform) {
    std::vector<std::int64_t> row(static_cast<std::size_t>(params.k));
    for (int d = 0; d < params.n; ++d) {
      for (auto& v : row) v = rng.uniform(1, params.max_cost);
      inst.cost.append_row(row);
    }
  } else {
    std::vector<std::pair<std::int64_t, std::int64_t>> center_at(
        static_cast<std::size_t>(params.k));
    for (auto& p : center_at) {
      p.first = rng.uniform(0, params.width - 1);
      p.second = rng.uniform(0, params.width - 1);
    }
    std::vector<std::int64_t> row(static_cast<std::size_t>(params.k));
    for (int d = 0; d < params.n; ++d) {
      const std::int64_t x = rng.uniform(0, params.width - 1);
      const std::int64_t y = rng.uniform(0, params.width - 1);
      for (int s = 0; s < params.k; ++s) {
        const std::int64_t dx = x - center_at[static_cast<std::size_t>(s)].first;
        const std::int64_t dy = y - center_at[static_cast<std::size_t>(s)].second;
        row[static_cast<std::size_t>(s)] = std::max<std::int64_t>(1, rounded_isqrt(dx * dx + dy * dy));
      }
      inst.cost.append_row(row);
    }
  }
  return validate_instance(std::move(inst));
}

CapacityPolicy parse_capacity_policy(const std::string& text) {
  if (text == "tight") return CapacityPolicy::tight();
  if (text == "ample") return CapacityPolicy::ample();
  if (text == "zero") return CapacityPolicy::zero();
  if (text.rfind("fixed:", 0) == 0) return CapacityPolicy::fixed_cap(std::stoll(text.substr(6)));
  if (text.rfind("range:", 0) == 0) {
    const auto rest = text.substr(6);
    const auto colon = rest.find(':');
    if (colon != std::string::npos)
      return CapacityPolicy::range(std::stoll(rest.substr(0, colon)),
                                   std::stoll(rest.substr(colon + 1)));
  }
  throw Error(Errc::ParseError,
              "capacity policy must be tight|ample|zero|fixed:<c>|range:<lo>:<hi>, got '" + text + "'");
}

PenaltyPolicy parse_penalty_policy(const std::string& text) {
  if (text == "constant") return PenaltyPolicy::Constant;
  if (text == "linear") return PenaltyPolicy::Linear;
  if (text == "table") return PenaltyPolicy::Table;
  if (text == "mixed") return PenaltyPolicy::Mixed;
  throw Error(Errc::ParseError, "penalty policy must be constant|linear|table|mixed, got '" + text + "'");
}

}  // namespace lbdd
