#include "lbdd/loop_search.hpp"

#include <algorithm>
#include <cassert>

namespace lbdd {

namespace {

// Cheapest candidate for the ordered pair (u, v), encoded with head node
// `to_node` (differs from v when v is the split anchor). Ties prefer the
// transfer: cycle closures leave occupancies untouched.
std::optional<LoopEdge> best_edge(const ProblemInstance& inst, const Allotment& a,
                                  TransferHeapSet& heaps, int u, int v, int to_node,
                                  bool allow_penalty) {
  std::optional<LoopEdge> out;
  if (auto t = heaps.min_transfer_edge(u, v))
    out = LoopEdge{u, to_node, Cost::finite(t->weight), false, t->demand};
  if (allow_penalty) {
    const Cost w = penalty_edge_weight(inst, a, u, v);
    if (w.inf <= 0 && (!out || w < out->weight)) out = LoopEdge{u, to_node, w, true, -1};
  }
  return out;
}

void sort_edges(LoopSearchGraph& g) {
  std::sort(g.edges.begin(), g.edges.end(), [](const LoopEdge& a, const LoopEdge& b) {
    if (a.from != b.from) return a.from < b.from;
    return a.to < b.to;
  });
}

}  // namespace

LoopSearchGraph build_loop_graph_start(const ProblemInstance& inst, const Allotment& a,
                                       TransferHeapSet& heaps, int anchor) {
  LoopSearchGraph g{inst.center_count(), anchor, {}};
  for (int u = 0; u < g.center_count; ++u) {
    for (int v = 0; v < g.center_count; ++v) {
      if (u == v) continue;
      const bool into_anchor = v == anchor;
      const int head = into_anchor ? g.in_node() : v;
      if (auto e = best_edge(inst, a, heaps, u, v, head, into_anchor)) g.edges.push_back(*e);
    }
  }
  sort_edges(g);
  return g;
}

LoopSearchGraph build_loop_graph_through(const ProblemInstance& inst, const Allotment& a,
                                         TransferHeapSet& heaps, int anchor) {
  LoopSearchGraph g{inst.center_count(), anchor, {}};
  for (int u = 0; u < g.center_count; ++u) {
    for (int v = 0; v < g.center_count; ++v) {
      if (u == v) continue;
      const int head = v == anchor ? g.in_node() : v;
      if (auto e = best_edge(inst, a, heaps, u, v, head, true)) g.edges.push_back(*e);
    }
  }
  sort_edges(g);
  return g;
}

ShortestPathResult bellman_ford(const LoopSearchGraph& g) {
  const int nodes = g.node_count();
  const int source = g.anchor;
  const int target = g.in_node();
  // Exact layered relaxation: dist[e][v] is the cheapest walk of at most e
  // edges, so reconstruction never runs into a relaxed-in-place cycle.
  std::vector<std::vector<std::optional<Cost>>> dist;
  std::vector<std::vector<int>> pred;  // pred[e-1][v]: edge improving v at layer e
  dist.emplace_back(nodes);
  dist[0][source] = Cost{};

  ShortestPathResult res;
  std::optional<Cost> best;
  int best_layer = -1;
  for (int e = 1; e <= nodes; ++e) {
    const auto& prev = dist.back();
    auto cur = prev;
    std::vector<int> p(static_cast<std::size_t>(nodes), -1);
    bool improved = false;
    for (std::size_t idx = 0; idx < g.edges.size(); ++idx) {
      const auto& ed = g.edges[idx];
      if (!prev[ed.from]) continue;
      const Cost cand = *prev[ed.from] + ed.weight;
      if (!cur[ed.to] || cand < *cur[ed.to]) {
        cur[ed.to] = cand;
        p[ed.to] = static_cast<int>(idx);
        improved = true;
      }
    }
    ++res.rounds;
    if (!improved) break;
    if (e == nodes)
      throw Error(Errc::NegativeCycleOffAnchor,
                  "shortest-path labels still improving after node-count rounds");
    dist.push_back(std::move(cur));
    pred.push_back(std::move(p));
    if (dist.back()[target] && (!best || *dist.back()[target] < *best)) {
      best = dist.back()[target];
      best_layer = e;
    }
  }
  if (!best) return res;

  res.feasible = true;
  res.cost = *best;
  int v = target;
  for (int e = best_layer; e >= 1; --e) {
    const int pe = pred[static_cast<std::size_t>(e) - 1][v];
    if (pe < 0) continue;  // label carried over from the previous layer
    res.path.push_back(g.edges[static_cast<std::size_t>(pe)]);
    v = g.edges[static_cast<std::size_t>(pe)].from;
  }
  assert(v == source);
  std::reverse(res.path.begin(), res.path.end());
  return res;
}

namespace {

int center_of_node(const LoopSearchGraph& g, int node) {
  return node == g.in_node() ? g.anchor : node;
}

Transfer as_transfer(const LoopSearchGraph& g, const LoopEdge& e) {
  assert(!e.is_penalty);
  return Transfer{center_of_node(g, e.from), center_of_node(g, e.to), e.demand};
}

}  // namespace

std::optional<Loop> extract_loop_start(const LoopSearchGraph& g, const ShortestPathResult& r) {
  if (!r.feasible || !r.cost.is_negative()) return std::nullopt;
  std::vector<Transfer> transfers;
  bool penalty_closed = false;
  for (const auto& e : r.path) {
    if (e.is_penalty) {
      assert(&e == &r.path.back());  // start graphs only admit penalties into the in-node
      penalty_closed = true;
      break;
    }
    transfers.push_back(as_transfer(g, e));
  }
  if (penalty_closed) return Loop::penalty_closed(std::move(transfers), r.cost);
  return Loop::cycle(std::move(transfers), r.cost);
}

std::optional<Loop> extract_loop_through(const LoopSearchGraph& g, const ShortestPathResult& r,
                                         const ProblemInstance& inst, const Allotment& a) {
  if (!r.feasible) return std::nullopt;

  std::vector<std::size_t> pens;
  for (std::size_t i = 0; i < r.path.size(); ++i)
    if (r.path[i].is_penalty) pens.push_back(i);

  std::vector<LoopEdge> path;
  Cost cost = r.cost;
  if (pens.size() >= 2) {
    const int x = center_of_node(g, r.path[pens.front()].from);
    const int w = center_of_node(g, r.path[pens.back()].to);
    if (x == w) {
      // The whole stretch collapses; such a path is never negative.
      assert(!r.cost.is_negative());
      return std::nullopt;
    }
    const Cost pw = penalty_edge_weight(inst, a, x, w);
    if (pw.inf > 0) return std::nullopt;
    cost = pw;
    for (std::size_t i = 0; i < pens.front(); ++i) {
      path.push_back(r.path[i]);
      cost += r.path[i].weight;
    }
    path.push_back(LoopEdge{x, w, pw, true, -1});
    for (std::size_t i = pens.back() + 1; i < r.path.size(); ++i) {
      path.push_back(r.path[i]);
      cost += r.path[i].weight;
    }
    assert(cost <= r.cost);
  } else {
    path = r.path;
  }
  if (!cost.is_negative()) return std::nullopt;

  std::size_t pen_index = path.size();
  for (std::size_t i = 0; i < path.size(); ++i)
    if (path[i].is_penalty) pen_index = i;

  std::vector<Transfer> transfers;
  if (pen_index == path.size()) {
    for (const auto& e : path) transfers.push_back(as_transfer(g, e));
    return Loop::cycle(std::move(transfers), cost);
  }
  // Rotate so the chain runs from the penalty edge's head back to its tail.
  for (std::size_t i = pen_index + 1; i < path.size(); ++i)
    transfers.push_back(as_transfer(g, path[i]));
  for (std::size_t i = 0; i < pen_index; ++i) transfers.push_back(as_transfer(g, path[i]));
  return Loop::penalty_closed(std::move(transfers), cost);
}

std::optional<Loop> most_negative_loop(const ProblemInstance& inst, const Allotment& a,
                                       TransferHeapSet& heaps, int anchor, LoopVariant variant,
                                       SearchStats* stats) {
  if (variant == LoopVariant::Start && a.members(anchor).empty()) return std::nullopt;
  const LoopSearchGraph g = variant == LoopVariant::Start
                                ? build_loop_graph_start(inst, a, heaps, anchor)
                                : build_loop_graph_through(inst, a, heaps, anchor);
  const ShortestPathResult r = bellman_ford(g);
  if (stats) stats->rounds += r.rounds;
  if (!r.feasible) return std::nullopt;
  return variant == LoopVariant::Start ? extract_loop_start(g, r)
                                       : extract_loop_through(g, r, inst, a);
}

namespace {

Cost edges_cost(const std::vector<LoopEdge>& edges) {
  Cost c{};
  for (const auto& e : edges) c += e.weight;
  return c;
}

// Exchanges the two cyclically consecutive penalty edges at p1 < p2 for the
// pair (p1.from -> p2.to), (p2.from -> p1.to); the two resulting cycles cost
// exactly as much as the original together, so a negative one survives.
std::vector<LoopEdge> split_penalty_pair(const ProblemInstance& inst, const Allotment& a,
                                         const std::vector<LoopEdge>& cycle, std::size_t p1,
                                         std::size_t p2) {
  const int x = cycle[p1].from, y = cycle[p1].to;
  const int z = cycle[p2].from, w = cycle[p2].to;

  std::optional<std::vector<LoopEdge>> keep;
  Cost keep_cost{};
  if (x != w) {
    std::vector<LoopEdge> c1{LoopEdge{x, w, penalty_edge_weight(inst, a, x, w), true, -1}};
    for (std::size_t i = p2 + 1; i < cycle.size(); ++i) c1.push_back(cycle[i]);
    for (std::size_t i = 0; i < p1; ++i) c1.push_back(cycle[i]);
    if (const Cost c = edges_cost(c1); c.is_negative()) {
      keep = std::move(c1);
      keep_cost = c;
    }
  }
  if (z != y) {
    std::vector<LoopEdge> c2;
    for (std::size_t i = p1 + 1; i < p2; ++i) c2.push_back(cycle[i]);
    c2.push_back(LoopEdge{z, y, penalty_edge_weight(inst, a, z, y), true, -1});
    if (const Cost c = edges_cost(c2); c.is_negative() && (!keep || c < keep_cost)) {
      keep = std::move(c2);
      keep_cost = c;
    }
  }
  assert(keep);  // the piece costs sum to the negative original
  return std::move(*keep);
}

}  // namespace

std::optional<Loop> find_negative_cycle(const ProblemInstance& inst, const Allotment& a,
                                        TransferHeapSet& heaps) {
  const int k = inst.center_count();
  std::vector<LoopEdge> edges;
  for (int u = 0; u < k; ++u)
    for (int v = 0; v < k; ++v) {
      if (u == v) continue;
      if (auto e = best_edge(inst, a, heaps, u, v, v, true)) edges.push_back(*e);
    }

  // Bellman-Ford from a virtual source attached to every node.
  std::vector<Cost> dist(static_cast<std::size_t>(k));
  std::vector<int> pred(static_cast<std::size_t>(k), -1);
  int improved = -1;
  for (int round = 0; round <= k; ++round) {
    improved = -1;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto& e = edges[i];
      if (dist[e.from] + e.weight < dist[e.to]) {
        dist[e.to] = dist[e.from] + e.weight;
        pred[e.to] = static_cast<int>(i);
        improved = e.to;
      }
    }
    if (improved < 0) return std::nullopt;
  }

  int z = improved;
  for (int i = 0; i < k; ++i) z = edges[static_cast<std::size_t>(pred[z])].from;
  std::vector<LoopEdge> cycle;
  for (int u = z;;) {
    const auto& e = edges[static_cast<std::size_t>(pred[u])];
    cycle.push_back(e);
    u = e.from;
    if (u == z) break;
  }
  std::reverse(cycle.begin(), cycle.end());
  assert(edges_cost(cycle).is_negative());

  for (;;) {
    std::vector<std::size_t> pens;
    for (std::size_t i = 0; i < cycle.size(); ++i)
      if (cycle[i].is_penalty) pens.push_back(i);
    if (pens.size() < 2) break;
    cycle = split_penalty_pair(inst, a, cycle, pens[0], pens[1]);
  }

  const Cost cost = edges_cost(cycle);
  std::vector<Transfer> transfers;
  std::size_t pen_index = cycle.size();
  for (std::size_t i = 0; i < cycle.size(); ++i)
    if (cycle[i].is_penalty) pen_index = i;
  if (pen_index == cycle.size()) {
    for (const auto& e : cycle) transfers.push_back(Transfer{e.from, e.to, e.demand});
    return Loop::cycle(std::move(transfers), cost);
  }
  for (std::size_t i = pen_index + 1; i < cycle.size(); ++i)
    transfers.push_back(Transfer{cycle[i].from, cycle[i].to, cycle[i].demand});
  for (std::size_t i = 0; i < pen_index; ++i)
    transfers.push_back(Transfer{cycle[i].from, cycle[i].to, cycle[i].demand});
  return Loop::penalty_closed(std::move(transfers), cost);
}

}  // namespace lbdd
