#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lbdd/allotment.hpp"
#include "lbdd/instance.hpp"

namespace lbdd {

// Instance text format (one token-separated record per line, '#' comments
// and blank lines ignored):
//
//   lbdd 1
//   <k> <n> <overload_allowed|hard_capacity>
//   center <id> cap <c> penalty constant <v> | linear <b> <s>
//                                | table <v1> ... <vm> | infinite
//   demand <id> costs <c1> ... <ck>
//
// Parse errors carry the 1-based line number.
ProblemInstance parse_instance(std::istream& in);
ProblemInstance parse_instance_file(const std::string& path);
void render_instance(std::ostream& out, const ProblemInstance& inst);

struct Event {
  enum class Kind { Insert, Remove, Capacity, Shift };
  Kind kind = Kind::Insert;
  std::vector<std::int64_t> row;  // Insert
  int demand = -1;                // Remove
  int center = -1;                // Capacity / Shift
  int delta = 0;                  // Capacity: +1 or -1
  bool shift_right = false;       // Shift
};

// Event stream format, one event per line:
//   insert <c1> ... <ck>
//   remove <demand_id>
//   cap <center> +1|-1
//   shift <center> left|right
std::vector<Event> parse_events(std::istream& in);
std::vector<Event> parse_events_file(const std::string& path);

// Result document: objective, per-center occupancy and penalty paid,
// one `assign <demand> <center>` line per assigned demand, optional
// `unassigned <demand>` lines and certificate verdict.
struct ResultDoc {
  Cost objective{};
  bool has_certificate = false;
  bool certified_optimal = false;
  std::vector<int> unassigned;
};

void render_result(std::ostream& out, const ProblemInstance& inst, const Allotment& a,
                   const ResultDoc& doc);

// Reads the `assign` lines of a result document back into an allotment over
// `inst`'s centers.
Allotment parse_assignment(std::istream& in, const ProblemInstance& inst);
Allotment parse_assignment_file(const std::string& path, const ProblemInstance& inst);

}  // namespace lbdd
