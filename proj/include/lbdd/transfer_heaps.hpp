#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "lbdd/allotment.hpp"
#include "lbdd/instance.hpp"

namespace lbdd {

// Cheapest current transfer between an ordered center pair.
struct MinEdge {
  int from = -1;
  int to = -1;
  int demand = -1;
  std::int64_t weight = 0;
};

// One lazy min-heap per ordered center pair (i, j), holding candidate
// transfers of i's members to j keyed by CM[d][j] - CM[d][i], ties broken by
// smaller demand id. Entries are never updated in place: every move or
// removal bumps the demand's version stamp, and stale tops are discarded on
// access.
class TransferHeapSet {
 public:
  TransferHeapSet(int center_count, int demand_count);

  void on_demand_added(const ProblemInstance& inst, int d, int center);
  void on_demand_moved(const ProblemInstance& inst, int d, int to);
  void on_demand_removed(int d);

  // Minimum valid transfer from -> to, or nullopt when `from` has no members.
  std::optional<MinEdge> min_transfer_edge(int from, int to);

 private:
  struct Entry {
    std::int64_t weight;
    int demand;
    std::uint64_t version;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.weight != b.weight) return a.weight > b.weight;
      return a.demand > b.demand;
    }
  };
  using Heap = std::priority_queue<Entry, std::vector<Entry>, Later>;

  Heap& heap(int i, int j) { return heaps_[static_cast<std::size_t>(i) * k_ + j]; }
  void push_out_edges(const ProblemInstance& inst, int d, int center);

  int k_;
  std::vector<Heap> heaps_;  // k*k slots, diagonal unused
  std::vector<std::uint64_t> version_;
};

TransferHeapSet build_heaps(const ProblemInstance& inst, const Allotment& a);

// Weight of the penalty edge (i, j): marginal_penalty(i, o_i + 1) -
// marginal_penalty(j, o_j). As part of a loop it closes a transfer chain
// running j -> ... -> i, so i gains one demand and j loses one. Infinite
// penalty at a full center i makes the edge unusable (inf > 0).
Cost penalty_edge_weight(const ProblemInstance& inst, const Allotment& a, int i, int j);

}  // namespace lbdd
