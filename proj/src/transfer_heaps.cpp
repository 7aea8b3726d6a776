#include "lbdd/transfer_heaps.hpp"

namespace lbdd {

TransferHeapSet::TransferHeapSet(int center_count, int demand_count)
    : k_(center_count),
      heaps_(static_cast<std::size_t>(center_count) * center_count),
      version_(static_cast<std::size_t>(demand_count), 0) {}

void TransferHeapSet::push_out_edges(const ProblemInstance& inst, int d, int center) {
  const auto v = version_[d];
  const std::int64_t here = inst.cost.at(d, center);
  for (int l = 0; l < k_; ++l) {
    if (l == center) continue;
    heap(center, l).push(Entry{inst.cost.at(d, l) - here, d, v});
  }
}

void TransferHeapSet::on_demand_added(const ProblemInstance& inst, int d, int center) {
  if (d >= static_cast<int>(version_.size())) version_.resize(static_cast<std::size_t>(d) + 1, 0);
  push_out_edges(inst, d, center);
}

void TransferHeapSet::on_demand_moved(const ProblemInstance& inst, int d, int to) {
  ++version_[d];  // invalidates the entries under the previous source
  push_out_edges(inst, d, to);
}

void TransferHeapSet::on_demand_removed(int d) { ++version_[d]; }

std::optional<MinEdge> TransferHeapSet::min_transfer_edge(int from, int to) {
  auto& h = heap(from, to);
  while (!h.empty() && h.top().version != version_[h.top().demand]) h.pop();
  if (h.empty()) return std::nullopt;
  const auto& e = h.top();
  return MinEdge{from, to, e.demand, e.weight};
}

TransferHeapSet build_heaps(const ProblemInstance& inst, const Allotment& a) {
  TransferHeapSet heaps(inst.center_count(), a.demand_slots());
  for (int d = 0; d < a.demand_slots(); ++d)
    if (a.assigned(d)) heaps.on_demand_added(inst, d, a.center_of(d));
  return heaps;
}

Cost penalty_edge_weight(const ProblemInstance& inst, const Allotment& a, int i, int j) {
  return marginal_penalty(inst, i, a.occupancy(i) + 1) - marginal_penalty(inst, j, a.occupancy(j));
}

}  // namespace lbdd
