#ifndef GSHIFT_POLYNOMIAL_HPP
#define GSHIFT_POLYNOMIAL_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "gshift/interval.hpp"
#include "gshift/numeric.hpp"

namespace gshift {

// Thrown when a composition would exceed the configured degree cap.
struct DegreeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Integer polynomial in one variable, coefficients in ascending degree order.
// Canonical: no trailing zero coefficients, the zero polynomial is {}.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly zero() { return Poly(); }
  static Poly constant(Int v) { return Poly({std::move(v)}); }
  static Poly variable() { return Poly({Int(0), Int(1)}); }

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_identity() const { return c_.size() == 2 && c_[0] == 0 && c_[1] == 1; }

  // Degree of the zero polynomial is reported as 0.
  int degree() const { return c_.empty() ? 0 : static_cast<int>(c_.size()) - 1; }

  const Int& coeff(std::size_t i) const {
    static const Int kZero(0);
    return i < c_.size() ? c_[i] : kZero;
  }
  const Int& leading() const {
    if (c_.empty()) throw std::logic_error("poly: leading coeff of zero");
    return c_.back();
  }
  const std::vector<Int>& coeffs() const { return c_; }

  Int eval(const Int& n) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;

  // this(g(n)). max_degree == 0 disables the cap (internal use).
  Poly compose(const Poly& g, unsigned max_degree = 0) const;

  // p(n+1) - p(n); degree drops by exactly one for non-constant p.
  Poly delta() const;

  // B >= 1 such that every real root x satisfies |x| < B (Cauchy bound).
  // Only meaningful for non-constant polynomials.
  Int cauchy_bound() const;

  // Remainder of this modulo (n-lo)(n-lo-1)...(n-lo-size+1): the canonical
  // representative of this polynomial as a function on that integer window.
  Poly reduced_for_window(const Int& lo, unsigned size) const;

  // DSL syntax, e.g. "n^2 - 3*n + 1".
  std::string str() const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Int> c_;
};

int cmp(const Poly& a, const Poly& b);
inline bool operator==(const Poly& a, const Poly& b) { return cmp(a, b) == 0; }
inline bool operator!=(const Poly& a, const Poly& b) { return cmp(a, b) != 0; }
inline bool operator<(const Poly& a, const Poly& b) { return cmp(a, b) < 0; }

// A maximal run of integers on which sgn(q) is constant.
struct SignRun {
  Interval where;
  int sign;  // -1, 0, +1
};

// Ordered partition of Z into maximal constant-sign runs of q.
std::vector<SignRun> sign_runs(const Poly& q);

// All integer roots of a non-zero polynomial, sorted ascending.
std::vector<Int> integer_roots(const Poly& q);

// Maximal rays on which a sign condition holds, from the sign runs; nullopt
// when the condition fails on every ray in that direction. A returned
// interval with an absent finite bound means the condition holds on all of Z.
std::optional<Interval> positive_suffix(const Poly& q);     // sgn>0 on [t,+inf)
std::optional<Interval> nonnegative_suffix(const Poly& q);  // sgn>=0 on [t,+inf)
std::optional<Interval> negative_prefix(const Poly& q);     // sgn<0 on (-inf,t]
std::optional<Interval> nonnegative_prefix(const Poly& q);  // sgn>=0 on (-inf,t]

}  // namespace gshift

#endif  // GSHIFT_POLYNOMIAL_HPP
