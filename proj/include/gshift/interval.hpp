#ifndef GSHIFT_INTERVAL_HPP
#define GSHIFT_INTERVAL_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "gshift/numeric.hpp"

namespace gshift {

// Integer interval with inclusive endpoints; an absent endpoint is unbounded.
struct Interval {
  std::optional<Int> lo;  // nullopt = -inf
  std::optional<Int> hi;  // nullopt = +inf

  Interval() = default;
  Interval(std::optional<Int> l, std::optional<Int> h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo && hi && *lo > *hi) throw std::invalid_argument("interval: lo > hi");
  }

  static Interval all() { return Interval(std::nullopt, std::nullopt); }
  static Interval at_least(Int a) { return Interval(std::move(a), std::nullopt); }
  static Interval at_most(Int b) { return Interval(std::nullopt, std::move(b)); }
  static Interval between(Int a, Int b) { return Interval(std::move(a), std::move(b)); }
  static Interval point(Int a) { return Interval(a, a); }

  bool contains(const Int& n) const {
    if (lo && n < *lo) return false;
    if (hi && n > *hi) return false;
    return true;
  }

  bool bounded() const { return lo.has_value() && hi.has_value(); }
  bool bounded_below() const { return lo.has_value(); }
  bool bounded_above() const { return hi.has_value(); }
  bool is_all() const { return !lo && !hi; }
  bool is_singleton() const { return lo && hi && *lo == *hi; }

  // Number of integers in the interval; only valid when bounded.
  Int count() const {
    if (!bounded()) throw std::logic_error("interval: count of unbounded interval");
    return *hi - *lo + 1;
  }

  std::optional<Interval> intersect(const Interval& o) const {
    std::optional<Int> l = lo;
    if (o.lo && (!l || *o.lo > *l)) l = o.lo;
    std::optional<Int> h = hi;
    if (o.hi && (!h || *o.hi < *h)) h = o.hi;
    if (l && h && *l > *h) return std::nullopt;
    return Interval(l, h);
  }

  std::string str() const {
    std::string a = lo ? to_string(*lo) : std::string("-inf");
    std::string b = hi ? to_string(*hi) : std::string("+inf");
    return "[" + a + "," + b + "]";
  }
};

inline int cmp_int(const Int& a, const Int& b) { return a < b ? -1 : (a == b ? 0 : 1); }

// Compare optional bounds; nullopt stands for -inf when minus_inf, else +inf.
inline int cmp_bound(const std::optional<Int>& a, const std::optional<Int>& b, bool minus_inf) {
  if (!a && !b) return 0;
  if (!a) return minus_inf ? -1 : 1;
  if (!b) return minus_inf ? 1 : -1;
  return cmp_int(*a, *b);
}

inline int cmp(const Interval& a, const Interval& b) {
  if (int c = cmp_bound(a.lo, b.lo, true)) return c;
  return cmp_bound(a.hi, b.hi, false);
}

inline bool operator==(const Interval& a, const Interval& b) { return cmp(a, b) == 0; }
inline bool operator!=(const Interval& a, const Interval& b) { return cmp(a, b) != 0; }
inline bool operator<(const Interval& a, const Interval& b) { return cmp(a, b) < 0; }

}  // namespace gshift

#endif  // GSHIFT_INTERVAL_HPP
