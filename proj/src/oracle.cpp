#include "lbdd/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace lbdd {

OracleResult exhaustive_solve(const ProblemInstance& inst, std::int64_t state_bound) {
  const int k = inst.center_count();
  const int n = inst.demand_count();
  const bool hard = inst.mode == Mode::HardCapacity;
  const int choices = hard ? k + 1 : k;

  std::int64_t states = 1;
  for (int i = 0; i < n; ++i) {
    states *= choices;
    if (states > state_bound)
      throw Error(Errc::TooLarge, "exhaustive search would visit more than " +
                                      std::to_string(state_bound) + " states");
  }

  std::int64_t total_capacity = 0;
  for (const auto& c : inst.centers) total_capacity += c.capacity;
  const std::int64_t must_skip = hard ? std::max<std::int64_t>(0, n - total_capacity) : 0;

  std::vector<int> current(static_cast<std::size_t>(n), -1);
  std::vector<std::int64_t> occupancy(static_cast<std::size_t>(k), 0);
  OracleResult best;
  bool have_best = false;
  Cost running{};
  std::int64_t skipped = 0;

  std::function<void(int)> walk = [&](int d) {
    if (d == n) {
      if (hard && skipped != must_skip) return;
      if (!have_best || running < best.objective) {
        best.objective = running;
        best.assignment = current;
        have_best = true;
      }
      return;
    }
    for (int s = 0; s < k; ++s) {
      if (hard && occupancy[static_cast<std::size_t>(s)] >=
                      inst.centers[static_cast<std::size_t>(s)].capacity)
        continue;
      const Cost delta = Cost::finite(inst.cost.at(d, s)) +
                         marginal_penalty(inst, s, occupancy[static_cast<std::size_t>(s)] + 1);
      current[static_cast<std::size_t>(d)] = s;
      ++occupancy[static_cast<std::size_t>(s)];
      running += delta;
      walk(d + 1);
      running -= delta;
      --occupancy[static_cast<std::size_t>(s)];
      current[static_cast<std::size_t>(d)] = -1;
    }
    if (hard && skipped < must_skip) {
      ++skipped;
      walk(d + 1);
      --skipped;
    }
  };
  walk(0);

  assert(have_best);
  return best;
}

namespace {

struct FlowGraph {
  struct Arc {
    int to;
    std::int64_t cap;
    std::int64_t cost;
    std::size_t rev;
  };
  std::vector<std::vector<Arc>> adj;

  explicit FlowGraph(int nodes) : adj(static_cast<std::size_t>(nodes)) {}

  void add(int u, int v, std::int64_t cap, std::int64_t cost) {
    adj[static_cast<std::size_t>(u)].push_back({v, cap, cost, adj[static_cast<std::size_t>(v)].size()});
    adj[static_cast<std::size_t>(v)].push_back({u, 0, -cost, adj[static_cast<std::size_t>(u)].size() - 1});
  }
};

}  // namespace

Cost mincost_flow_solve(const ProblemInstance& inst) {
  const int k = inst.center_count();
  const int n = inst.demand_count();
  const int src = 0;
  const int first_demand = 1;
  const int first_center = 1 + n;
  const int sink = 1 + n + k;
  const int nodes = sink + 1;

  FlowGraph g(nodes);
  for (int d = 0; d < n; ++d) {
    g.add(src, first_demand + d, 1, 0);
    for (int s = 0; s < k; ++s) g.add(first_demand + d, first_center + s, 1, inst.cost.at(d, s));
  }
  // One unit arc per occupancy level; the x-th unit at a center costs its
  // marginal penalty at level x, which is nondecreasing, so cheapest-path
  // augmentation fills levels in order.
  for (int s = 0; s < k; ++s) {
    for (std::int64_t x = 1; x <= n; ++x) {
      const Cost m = marginal_penalty(inst, s, x);
      if (!m.is_finite()) break;
      g.add(first_center + s, sink, 1, m.fin);
    }
  }

  const std::int64_t unreached = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> potential(static_cast<std::size_t>(nodes), 0);
  std::vector<std::int64_t> dist(static_cast<std::size_t>(nodes));
  std::vector<std::pair<int, std::size_t>> parent(static_cast<std::size_t>(nodes));
  Cost total{};

  for (int unit = 0; unit < n; ++unit) {
    std::fill(dist.begin(), dist.end(), unreached);
    dist[src] = 0;
    using Item = std::pair<std::int64_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    queue.push({0, src});
    while (!queue.empty()) {
      const auto [du, u] = queue.top();
      queue.pop();
      if (du != dist[static_cast<std::size_t>(u)]) continue;
      for (std::size_t i = 0; i < g.adj[static_cast<std::size_t>(u)].size(); ++i) {
        const auto& arc = g.adj[static_cast<std::size_t>(u)][i];
        if (arc.cap <= 0) continue;
        const std::int64_t nd = du + arc.cost + potential[static_cast<std::size_t>(u)] -
                                potential[static_cast<std::size_t>(arc.to)];
        if (nd < dist[static_cast<std::size_t>(arc.to)]) {
          dist[static_cast<std::size_t>(arc.to)] = nd;
          parent[static_cast<std::size_t>(arc.to)] = {u, i};
          queue.push({nd, arc.to});
        }
      }
    }
    if (dist[static_cast<std::size_t>(sink)] == unreached)
      throw Error(Errc::WrongMode, "flow oracle ran out of sink capacity; reduce the instance first");
    for (int v = 0; v < nodes; ++v)
      if (dist[static_cast<std::size_t>(v)] != unreached)
        potential[static_cast<std::size_t>(v)] += dist[static_cast<std::size_t>(v)];
    for (int v = sink; v != src;) {
      const auto [u, i] = parent[static_cast<std::size_t>(v)];
      auto& arc = g.adj[static_cast<std::size_t>(u)][i];
      arc.cap -= 1;
      g.adj[static_cast<std::size_t>(arc.to)][arc.rev].cap += 1;
      v = u;
    }
    total += Cost::finite(potential[static_cast<std::size_t>(sink)]);
  }
  return total;
}

}  // namespace lbdd
