#ifndef GSHIFT_NUMERIC_HPP
#define GSHIFT_NUMERIC_HPP

#include <gmpxx.h>

#include <optional>
#include <string>

namespace gshift {

// Exact integers throughout: coordinates, coefficients and orbit points can
// grow far beyond any fixed-width type (repeated squaring, long closures).
using Int = mpz_class;

inline int sgn(const Int& v) { return mpz_sgn(v.get_mpz_t()); }

inline Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

// Ceiling of a/b for b > 0.
inline Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline std::string to_string(const Int& v) { return v.get_str(); }

inline std::optional<Int> parse_int(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return std::nullopt;
  for (std::size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
  Int v;
  if (mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0) return std::nullopt;
  return v;
}

}  // namespace gshift

#endif  // GSHIFT_NUMERIC_HPP
