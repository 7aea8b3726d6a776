#include "lbdd/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace lbdd {
namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw Error(Errc::ParseError, "line " + std::to_string(line) + ": " + msg);
}

// Yields one significant line at a time; '#' starts a comment, blank lines
// are skipped, and the 1-based line number of each yield is retained.
struct LineReader {
  std::istream& in;
  int lineno = 0;

  bool next(std::string& out) {
    while (std::getline(in, out)) {
      ++lineno;
      if (const auto hash = out.find('#'); hash != std::string::npos) out.erase(hash);
      if (out.find_first_not_of(" \t\r\n") != std::string::npos) return true;
    }
    return false;
  }
};

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> toks;
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

std::int64_t parse_int(const std::string& tok, int line, const std::string& what) {
  std::size_t used = 0;
  std::int64_t value = 0;
  try {
    value = std::stoll(tok, &used);
  } catch (const std::exception&) {
    fail(line, what + ": '" + tok + "' is not an integer");
  }
  if (used != tok.size()) fail(line, what + ": '" + tok + "' is not an integer");
  return value;
}

PenaltySpec parse_penalty(const std::vector<std::string>& toks, std::size_t at, int line) {
  if (at >= toks.size()) fail(line, "missing penalty specification");
  const std::string& form = toks[at];
  const std::size_t args = toks.size() - at - 1;
  if (form == "constant") {
    if (args != 1) fail(line, "penalty constant takes one value");
    return PenaltySpec::constant(parse_int(toks[at + 1], line, "penalty value"));
  }
  if (form == "linear") {
    if (args != 2) fail(line, "penalty linear takes base and step");
    return PenaltySpec::linear(parse_int(toks[at + 1], line, "penalty base"),
                               parse_int(toks[at + 2], line, "penalty step"));
  }
  if (form == "table") {
    if (args < 1) fail(line, "penalty table needs at least one value");
    std::vector<std::int64_t> values;
    for (std::size_t i = at + 1; i < toks.size(); ++i)
      values.push_back(parse_int(toks[i], line, "penalty table value"));
    return PenaltySpec::table(std::move(values));
  }
  if (form == "infinite") {
    if (args != 0) fail(line, "penalty infinite takes no values");
    return PenaltySpec::infinite();
  }
  fail(line, "unknown penalty form '" + form + "'");
}

}  // namespace

ProblemInstance parse_instance(std::istream& in) {
  LineReader reader{in};
  std::string line;

  if (!reader.next(line)) fail(reader.lineno, "empty document, expected 'lbdd 1'");
  if (auto toks = tokens_of(line); toks.size() != 2 || toks[0] != "lbdd" || toks[1] != "1")
    fail(reader.lineno, "expected header 'lbdd 1'");

  if (!reader.next(line)) fail(reader.lineno, "missing counts line 'k n mode'");
  const auto counts = tokens_of(line);
  if (counts.size() != 3) fail(reader.lineno, "expected 'k n mode'");
  const std::int64_t k = parse_int(counts[0], reader.lineno, "center count");
  const std::int64_t n = parse_int(counts[1], reader.lineno, "demand count");
  if (k < 1) fail(reader.lineno, "center count must be at least 1");
  if (n < 0) fail(reader.lineno, "demand count cannot be negative");
  ProblemInstance inst;
  if (counts[2] == "overload_allowed")
    inst.mode = Mode::OverloadAllowed;
  else if (counts[2] == "hard_capacity")
    inst.mode = Mode::HardCapacity;
  else
    fail(reader.lineno, "mode must be overload_allowed or hard_capacity");

  inst.centers.resize(static_cast<std::size_t>(k));
  std::vector<bool> center_seen(static_cast<std::size_t>(k), false);
  for (std::int64_t i = 0; i < k; ++i) {
    if (!reader.next(line)) fail(reader.lineno, "expected a center line");
    const auto toks = tokens_of(line);
    if (toks.size() < 5 || toks[0] != "center" || toks[2] != "cap" || toks[4] != "penalty")
      fail(reader.lineno, "expected 'center <id> cap <c> penalty ...'");
    const std::int64_t id = parse_int(toks[1], reader.lineno, "center id");
    if (id < 0 || id >= k) fail(reader.lineno, "center id out of range [0, k)");
    if (center_seen[static_cast<std::size_t>(id)]) fail(reader.lineno, "duplicate center id");
    center_seen[static_cast<std::size_t>(id)] = true;
    auto& c = inst.centers[static_cast<std::size_t>(id)];
    c.id = static_cast<int>(id);
    c.capacity = parse_int(toks[3], reader.lineno, "capacity");
    c.penalty = parse_penalty(toks, 5, reader.lineno);
  }

  inst.cost = CostMatrix(static_cast<int>(k));
  std::vector<std::vector<std::int64_t>> rows(static_cast<std::size_t>(n));
  std::vector<bool> demand_seen(static_cast<std::size_t>(n), false);
  for (std::int64_t i = 0; i < n; ++i) {
    if (!reader.next(line)) fail(reader.lineno, "expected a demand line");
    const auto toks = tokens_of(line);
    if (toks.size() != static_cast<std::size_t>(3 + k) || toks[0] != "demand" || toks[2] != "costs")
      fail(reader.lineno, "expected 'demand <id> costs c1 ... ck'");
    const std::int64_t id = parse_int(toks[1], reader.lineno, "demand id");
    if (id < 0 || id >= n) fail(reader.lineno, "demand id out of range [0, n)");
    if (demand_seen[static_cast<std::size_t>(id)]) fail(reader.lineno, "duplicate demand id");
    demand_seen[static_cast<std::size_t>(id)] = true;
    auto& row = rows[static_cast<std::size_t>(id)];
    for (std::int64_t j = 0; j < k; ++j)
      row.push_back(parse_int(toks[static_cast<std::size_t>(3 + j)], reader.lineno, "cost"));
  }
  for (const auto& row : rows) inst.cost.append_row(row);

  if (reader.next(line)) fail(reader.lineno, "unexpected trailing content");
  return validate_instance(std::move(inst));
}

ProblemInstance parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open instance file '" + path + "'");
  return parse_instance(in);
}

void render_instance(std::ostream& out, const ProblemInstance& inst) {
  out << "lbdd 1\n";
  out << inst.center_count() << ' ' << inst.demand_count() << ' '
      << (inst.mode == Mode::OverloadAllowed ? "overload_allowed" : "hard_capacity") << '\n';
  for (const auto& c : inst.centers) {
    out << "center " << c.id << " cap " << c.capacity << " penalty ";
    switch (c.penalty.form) {
      case PenaltySpec::Form::Constant:
        out << "constant " << c.penalty.base;
        break;
      case PenaltySpec::Form::Linear:
        out << "linear " << c.penalty.base << ' ' << c.penalty.step;
        break;
      case PenaltySpec::Form::Table:
        out << "table";
        for (const auto v : c.penalty.values) out << ' ' << v;
        break;
      case PenaltySpec::Form::Infinite:
        out << "infinite";
        break;
      case PenaltySpec::Form::Zero:
        throw Error(Errc::WrongMode, "reduced instances are not renderable");
    }
    out << '\n';
  }
  for (int d = 0; d < inst.demand_count(); ++d) {
    out << "demand " << d << " costs";
    for (const auto v : inst.cost.row(d)) out << ' ' << v;
    out << '\n';
  }
}

std::vector<Event> parse_events(std::istream& in) {
  LineReader reader{in};
  std::string line;
  std::vector<Event> events;
  while (reader.next(line)) {
    const auto toks = tokens_of(line);
    Event e;
    if (toks[0] == "insert") {
      e.kind = Event::Kind::Insert;
      for (std::size_t i = 1; i < toks.size(); ++i)
        e.row.push_back(parse_int(toks[i], reader.lineno, "cost"));
      if (e.row.empty()) fail(reader.lineno, "insert needs a cost row");
    } else if (toks[0] == "remove") {
      if (toks.size() != 2) fail(reader.lineno, "expected 'remove <demand_id>'");
      e.kind = Event::Kind::Remove;
      e.demand = static_cast<int>(parse_int(toks[1], reader.lineno, "demand id"));
    } else if (toks[0] == "cap") {
      if (toks.size() != 3) fail(reader.lineno, "expected 'cap <center> +1|-1'");
      e.kind = Event::Kind::Capacity;
      e.center = static_cast<int>(parse_int(toks[1], reader.lineno, "center id"));
      if (toks[2] == "+1")
        e.delta = 1;
      else if (toks[2] == "-1")
        e.delta = -1;
      else
        fail(reader.lineno, "capacity delta must be +1 or -1");
    } else if (toks[0] == "shift") {
      if (toks.size() != 3) fail(reader.lineno, "expected 'shift <center> left|right'");
      e.kind = Event::Kind::Shift;
      e.center = static_cast<int>(parse_int(toks[1], reader.lineno, "center id"));
      if (toks[2] == "right")
        e.shift_right = true;
      else if (toks[2] == "left")
        e.shift_right = false;
      else
        fail(reader.lineno, "shift direction must be left or right");
    } else {
      fail(reader.lineno, "unknown event '" + toks[0] + "'");
    }
    events.push_back(std::move(e));
  }
  return events;
}

std::vector<Event> parse_events_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open event file '" + path + "'");
  return parse_events(in);
}

void render_result(std::ostream& out, const ProblemInstance& inst, const Allotment& a,
                   const ResultDoc& doc) {
  out << "objective " << doc.objective << '\n';
  for (const auto& c : inst.centers)
    out << "center " << c.id << " occupancy " << a.occupancy(c.id) << " penalty "
        << penalty_block(inst, c.id, a.occupancy(c.id)) << '\n';
  for (int d = 0; d < a.demand_slots(); ++d)
    if (a.assigned(d)) out << "assign " << d << ' ' << a.center_of(d) << '\n';
  for (const auto d : doc.unassigned) out << "unassigned " << d << '\n';
  if (doc.has_certificate)
    out << "certificate " << (doc.certified_optimal ? "OPTIMAL" : "NOT_OPTIMAL") << '\n';
}

Allotment parse_assignment(std::istream& in, const ProblemInstance& inst) {
  LineReader reader{in};
  std::string line;
  Allotment a(inst.center_count(), inst.demand_count());
  while (reader.next(line)) {
    const auto toks = tokens_of(line);
    std::size_t at = 0;
    if (toks[0] == "assign") {
      at = 1;
    } else if (toks[0] == "objective" || toks[0] == "center" || toks[0] == "certificate" ||
               toks[0] == "unassigned") {
      continue;  // result-document furniture
    } else {
      at = 0;  // bare '<demand> <center>' pair
    }
    if (toks.size() - at != 2) fail(reader.lineno, "expected '<demand> <center>'");
    const std::int64_t d = parse_int(toks[at], reader.lineno, "demand id");
    const std::int64_t c = parse_int(toks[at + 1], reader.lineno, "center id");
    if (d < 0 || d >= inst.demand_count()) fail(reader.lineno, "demand id out of range");
    if (c < 0 || c >= inst.center_count()) fail(reader.lineno, "center id out of range");
    if (a.assigned(static_cast<int>(d))) fail(reader.lineno, "demand assigned twice");
    a.place(static_cast<int>(d), static_cast<int>(c));
  }
  return a;
}

Allotment parse_assignment_file(const std::string& path, const ProblemInstance& inst) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open assignment file '" + path + "'");
  return parse_assignment(in, inst);
}

}  // namespace lbdd
