#pragma once

#include <cstdint>
#include <ostream>

namespace lbdd {

// Exact value type for objectives and edge weights.
//
// Centers with a hard capacity carry an "infinite" overload penalty. Instead
// of a saturating sentinel (which would corrupt shortest-path arithmetic),
// a value is the pair (inf, fin): `inf` counts infinite penalty units and
// `fin` is the finite part. Addition is componentwise, comparison is
// lexicographic. Differences stay exact: a penalty edge into an overloaded
// hard center legitimately has inf == -1.
struct Cost {
  std::int64_t inf = 0;
  std::int64_t fin = 0;

  static constexpr Cost infinite() { return Cost{1, 0}; }
  static constexpr Cost finite(std::int64_t v) { return Cost{0, v}; }

  constexpr bool is_finite() const { return inf == 0; }
  constexpr bool is_negative() const { return inf < 0 || (inf == 0 && fin < 0); }

  friend constexpr Cost operator+(Cost a, Cost b) { return {a.inf + b.inf, a.fin + b.fin}; }
  friend constexpr Cost operator-(Cost a, Cost b) { return {a.inf - b.inf, a.fin - b.fin}; }
  constexpr Cost operator-() const { return {-inf, -fin}; }
  Cost& operator+=(Cost o) {
    inf += o.inf;
    fin += o.fin;
    return *this;
  }
  Cost& operator-=(Cost o) {
    inf -= o.inf;
    fin -= o.fin;
    return *this;
  }
  friend constexpr auto operator<=>(const Cost&, const Cost&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Cost& c) {
  if (c.inf == 0) return os << c.fin;
  if (c.inf == 1 && c.fin == 0) return os << "infinite";
  return os << c.inf << "*infinite" << (c.fin >= 0 ? "+" : "") << c.fin;
}

}  // namespace lbdd
