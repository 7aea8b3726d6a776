#include "lbdd/allotment.hpp"

#include <algorithm>
#include <cassert>
#include <string>

namespace lbdd {

Allotment::Allotment(int center_count, int demand_count)
    : assign_(static_cast<std::size_t>(demand_count), -1),
      pos_(static_cast<std::size_t>(demand_count), -1),
      members_(static_cast<std::size_t>(center_count)),
      occupancy_(static_cast<std::size_t>(center_count), 0) {}

void Allotment::ensure_demand(int d) {
  if (d >= demand_slots()) {
    assign_.resize(static_cast<std::size_t>(d) + 1, -1);
    pos_.resize(static_cast<std::size_t>(d) + 1, -1);
  }
}

void Allotment::attach(int d, int c) {
  assign_[d] = c;
  pos_[d] = static_cast<int>(members_[c].size());
  members_[c].push_back(d);
  ++assigned_count_;
}

void Allotment::detach(int d) {
  const int c = assign_[d];
  auto& list = members_[c];
  const int p = pos_[d];
  list[p] = list.back();
  pos_[list[p]] = p;
  list.pop_back();
  assign_[d] = -1;
  pos_[d] = -1;
  --assigned_count_;
}

void Allotment::place(int d, int c) {
  assert(!assigned(d));
  attach(d, c);
  ++occupancy_[c];
}

void Allotment::place_deferred(int d, int c) {
  assert(!assigned(d));
  attach(d, c);
}

void Allotment::move(int d, int to) {
  assert(assigned(d));
  const int from = assign_[d];
  detach(d);
  attach(d, to);
  --occupancy_[from];
  ++occupancy_[to];
}

void Allotment::unassign(int d) {
  assert(assigned(d));
  --occupancy_[assign_[d]];
  detach(d);
}

namespace {

void check_shape(const std::vector<Transfer>& transfers, bool cycle) {
  if (transfers.empty()) throw Error(Errc::InvalidLoop, "loop without transfers");
  for (std::size_t i = 0; i + 1 < transfers.size(); ++i)
    if (transfers[i].to != transfers[i + 1].from)
      throw Error(Errc::InvalidLoop, "transfer chain broken at position " + std::to_string(i));
  for (std::size_t i = 0; i < transfers.size(); ++i) {
    if (transfers[i].from == transfers[i].to)
      throw Error(Errc::InvalidLoop, "transfer with equal source and target");
    for (std::size_t l = i + 1; l < transfers.size(); ++l)
      if (transfers[i].from == transfers[l].from)
        throw Error(Errc::InvalidLoop, "center appears twice as transfer source");
  }
  const int first = transfers.front().from;
  const int last = transfers.back().to;
  if (cycle) {
    if (last != first) throw Error(Errc::InvalidLoop, "cycle closure does not return to start");
  } else {
    // last == first would be a cycle; last equal to an inner source would
    // touch that center twice and break the closure's penalty accounting.
    for (const auto& t : transfers)
      if (t.from == last) throw Error(Errc::InvalidLoop, "penalty closure target already on chain");
  }
}

}  // namespace

Loop Loop::cycle(std::vector<Transfer> transfers, Cost cost) {
  check_shape(transfers, true);
  return Loop(std::move(transfers), Closure::Cycle, cost);
}

Loop Loop::penalty_closed(std::vector<Transfer> transfers, Cost cost) {
  check_shape(transfers, false);
  return Loop(std::move(transfers), Closure::Penalty, cost);
}

void apply_loop(const ProblemInstance& inst, Allotment& a, const Loop& loop) {
  (void)inst;
  for (const auto& t : loop.transfers()) {
    if (t.demand >= a.demand_slots() || a.center_of(t.demand) != t.from)
      throw Error(Errc::StaleLoop, "demand " + std::to_string(t.demand) + " is no longer at center " +
                                       std::to_string(t.from));
  }
  for (const auto& t : loop.transfers()) a.move(t.demand, t.to);
}

}  // namespace lbdd
