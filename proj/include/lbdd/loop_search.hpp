#pragma once

#include <optional>
#include <vector>

#include "lbdd/allotment.hpp"
#include "lbdd/transfer_heaps.hpp"

namespace lbdd {

// Which family of loops a search covers, relative to its anchor center:
// Start finds loops whose transfer chain begins at the anchor; Through finds
// any loop visiting the anchor.
enum class LoopVariant { Start, Through };

struct LoopEdge {
  int from = -1;  // graph node ids; see LoopSearchGraph
  int to = -1;
  Cost weight{};
  bool is_penalty = false;
  int demand = -1;  // transfer payload, -1 on penalty edges

  bool operator==(const LoopEdge&) const = default;
};

// Directed search graph with the anchor split in two: node `anchor` keeps
// only outgoing edges (the chain start) and node center_count only incoming
// ones (the chain end). Parallel transfer/penalty candidates are collapsed
// to the cheaper edge at build time, payload retained; edges of weight
// inf > 0 are omitted.
struct LoopSearchGraph {
  int center_count = 0;
  int anchor = -1;
  std::vector<LoopEdge> edges;  // sorted by (from, to)

  int in_node() const { return center_count; }
  int node_count() const { return center_count + 1; }
};

// Start variant: non-anchor pairs carry transfer edges only; edges out of
// the anchor are transfers; edges into the anchor's in-node take the cheaper
// of the transfer and the penalty closure.
LoopSearchGraph build_loop_graph_start(const ProblemInstance& inst, const Allotment& a,
                                       TransferHeapSet& heaps, int anchor);

// Through variant: every ordered pair carries the cheaper of its transfer
// and penalty candidates.
LoopSearchGraph build_loop_graph_through(const ProblemInstance& inst, const Allotment& a,
                                         TransferHeapSet& heaps, int anchor);

struct ShortestPathResult {
  std::vector<LoopEdge> path;  // anchor out-node to in-node
  Cost cost{};
  bool feasible = false;
  int rounds = 0;  // relaxation sweeps executed
};

// Label-correcting shortest path from the anchor's out-node to its in-node.
// Edge weights may be negative; cycles avoiding the anchor must be
// nonnegative. Runs at most node_count rounds of exact layered relaxation
// (paths of <= node_count - 1 edges are enough for simple paths) and throws
// NegativeCycleOffAnchor if the final round still improves a label. Ties
// prefer fewer edges, then the build-time edge order.
ShortestPathResult bellman_ford(const LoopSearchGraph& g);

// Path -> loop conversion. Start variant: all edges are transfers except
// possibly the last, which closes by penalty. Returns nullopt for
// nonnegative cost.
std::optional<Loop> extract_loop_start(const LoopSearchGraph& g, const ShortestPathResult& r);

// Through variant: a path may contain several penalty edges; the stretch
// from the first one's tail x to the last one's head w is spliced into the
// single penalty edge (x, w), which never raises the cost. The result is
// rotated so the penalty edge closes the chain. Returns nullopt for
// nonnegative (post-splice) cost.
std::optional<Loop> extract_loop_through(const LoopSearchGraph& g, const ShortestPathResult& r,
                                         const ProblemInstance& inst, const Allotment& a);

struct SearchStats {
  std::int64_t rounds = 0;
};

// Most negative loop of the requested variant anchored at `anchor`, if any.
std::optional<Loop> most_negative_loop(const ProblemInstance& inst, const Allotment& a,
                                       TransferHeapSet& heaps, int anchor, LoopVariant variant,
                                       SearchStats* stats = nullptr);

// Finds some negative loop without anchoring: detects a negative cycle over
// the unsplit min-edge graph and decomposes it into a valid loop. Used as a
// certificate fallback on states arbitrary enough to break the per-anchor
// search's precondition.
std::optional<Loop> find_negative_cycle(const ProblemInstance& inst, const Allotment& a,
                                        TransferHeapSet& heaps);

}  // namespace lbdd
