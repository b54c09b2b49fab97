#include "gshift/polynomial.hpp"

#include <algorithm>
#include <cassert>

namespace gshift {

Int Poly::eval(const Int& n) const {
  Int acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * n + *it;
  return acc;
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  std::vector<Int> r(c_);
  for (auto& v : r) v = -v;
  return Poly(std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
  if (c_.empty() || o.c_.empty()) return Poly();
  std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return Poly(std::move(r));
}

Poly Poly::compose(const Poly& g, unsigned max_degree) const {
  if (max_degree > 0 && degree() >= 1 && g.degree() >= 1) {
    long target = static_cast<long>(degree()) * g.degree();
    if (target > static_cast<long>(max_degree))
      throw DegreeError("composition degree " + std::to_string(target) +
                        " exceeds maximum " + std::to_string(max_degree));
  }
  Poly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * g + Poly::constant(*it);
  return acc;
}

Poly Poly::delta() const {
  Poly shifted = compose(Poly({Int(1), Int(1)}));
  return shifted - *this;
}

Int Poly::cauchy_bound() const {
  if (is_constant()) throw std::logic_error("poly: cauchy bound of constant");
  Int m(0);
  for (std::size_t i = 0; i + 1 < c_.size(); ++i) m = std::max(m, abs_int(c_[i]));
  return Int(1) + ceil_div(m, abs_int(c_.back()));
}

Poly Poly::reduced_for_window(const Int& lo, unsigned size) const {
  if (static_cast<unsigned>(degree()) < size || is_zero()) return *this;
  Poly v = Poly::constant(1);
  for (unsigned i = 0; i < size; ++i) v = v * Poly({-(lo + Int(i)), Int(1)});
  // Long division by the monic vanishing polynomial; remainder is exact.
  std::vector<Int> r = c_;
  while (r.size() > size) {
    Int factor = r.back();
    std::size_t shift = r.size() - v.coeffs().size();
    for (std::size_t i = 0; i < v.coeffs().size(); ++i) r[shift + i] -= factor * v.coeff(i);
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  return Poly(std::move(r));
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (int d = degree(); d >= 0; --d) {
    const Int& a = coeff(static_cast<std::size_t>(d));
    if (a == 0) continue;
    bool first = out.empty();
    Int mag = abs_int(a);
    if (first) {
      if (a < 0) out += "-";
    } else {
      out += a < 0 ? " - " : " + ";
    }
    if (d == 0) {
      out += to_string(mag);
    } else {
      if (mag != 1) out += to_string(mag) + "*";
      out += d == 1 ? "n" : "n^" + std::to_string(d);
    }
  }
  return out;
}

int cmp(const Poly& a, const Poly& b) {
  if (a.coeffs().size() != b.coeffs().size())
    return a.coeffs().size() < b.coeffs().size() ? -1 : 1;
  for (std::size_t i = a.coeffs().size(); i-- > 0;) {
    if (int c = cmp_int(a.coeff(i), b.coeff(i))) return c;
  }
  return 0;
}

namespace {

// Smallest t in [lo, hi] with pred(t); pred must be monotone (false... true).
// Requires pred(hi) to have been checked by the caller.
template <typename Pred>
Int first_true(Int lo, Int hi, Pred pred) {
  while (lo < hi) {
    Int mid = lo + (hi - lo) / 2;
    if (pred(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

void add_transition(std::vector<Int>& ts, const Poly& q, const Int& t, const Int& seg_lo) {
  if (t <= seg_lo) return;
  if (sgn(q.eval(t)) != sgn(q.eval(t - 1))) ts.push_back(t);
}

}  // namespace

std::vector<SignRun> sign_runs(const Poly& q) {
  if (q.is_zero()) return {{Interval::all(), 0}};
  if (q.is_constant()) return {{Interval::all(), sgn(q.coeff(0))}};

  Int bound = q.cauchy_bound();
  // All sign transitions of q on Z lie in [-bound+1, bound]: beyond the Cauchy
  // bound q has no real roots, so its sign is constant on each ray.
  std::vector<Int> transitions;
  for (const SignRun& dr : sign_runs(q.delta())) {
    if (dr.sign == 0) continue;  // q constant on the run: no interior change
    // q is weakly monotone on [run.lo, run.hi + 1].
    Int lo = dr.where.lo ? std::max(*dr.where.lo, -bound) : -bound;
    Int hi = dr.where.hi ? std::min(*dr.where.hi + 1, bound) : bound;
    if (lo > hi) continue;
    if (dr.sign > 0) {
      if (sgn(q.eval(hi)) >= 0) {
        Int t0 = first_true(lo, hi, [&](const Int& n) { return q.eval(n) >= 0; });
        add_transition(transitions, q, t0, lo);
        if (sgn(q.eval(hi)) > 0) {
          Int t1 = first_true(lo, hi, [&](const Int& n) { return q.eval(n) > 0; });
          add_transition(transitions, q, t1, lo);
        }
      }
    } else {
      if (sgn(q.eval(hi)) <= 0) {
        Int t0 = first_true(lo, hi, [&](const Int& n) { return q.eval(n) <= 0; });
        add_transition(transitions, q, t0, lo);
        if (sgn(q.eval(hi)) < 0) {
          Int t1 = first_true(lo, hi, [&](const Int& n) { return q.eval(n) < 0; });
          add_transition(transitions, q, t1, lo);
        }
      }
    }
  }

  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());

  std::vector<SignRun> runs;
  if (transitions.empty()) {
    runs.push_back({Interval::all(), sgn(q.eval(0))});
    return runs;
  }
  runs.push_back({Interval::at_most(transitions.front() - 1),
                  sgn(q.eval(transitions.front() - 1))});
  for (std::size_t i = 0; i + 1 < transitions.size(); ++i)
    runs.push_back({Interval::between(transitions[i], transitions[i + 1] - 1),
                    sgn(q.eval(transitions[i]))});
  runs.push_back({Interval::at_least(transitions.back()), sgn(q.eval(transitions.back()))});

  // Adjacent runs always differ in sign by construction; merge defensively.
  std::vector<SignRun> merged;
  for (auto& r : runs) {
    if (!merged.empty() && merged.back().sign == r.sign)
      merged.back().where.hi = r.where.hi;
    else
      merged.push_back(r);
  }
  return merged;
}

std::vector<Int> integer_roots(const Poly& q) {
  if (q.is_zero()) throw std::logic_error("integer_roots: zero polynomial");
  std::vector<Int> roots;
  for (const SignRun& r : sign_runs(q)) {
    if (r.sign != 0) continue;
    // Zero runs of a non-zero polynomial hold at most deg(q) integers.
    assert(r.where.bounded());
    for (Int n = *r.where.lo; n <= *r.where.hi; ++n) roots.push_back(n);
  }
  return roots;
}

std::optional<Interval> positive_suffix(const Poly& q) {
  auto runs = sign_runs(q);
  if (runs.back().sign != 1) return std::nullopt;
  return runs.back().where;
}

std::optional<Interval> nonnegative_suffix(const Poly& q) {
  auto runs = sign_runs(q);
  std::optional<Interval> ray;
  for (auto it = runs.rbegin(); it != runs.rend(); ++it) {
    if (it->sign < 0) break;
    ray = Interval(it->where.lo, std::nullopt);
  }
  return ray;
}

std::optional<Interval> negative_prefix(const Poly& q) {
  auto runs = sign_runs(q);
  if (runs.front().sign != -1) return std::nullopt;
  return runs.front().where;
}

std::optional<Interval> nonnegative_prefix(const Poly& q) {
  auto runs = sign_runs(q);
  std::optional<Interval> ray;
  for (const auto& r : runs) {
    if (r.sign < 0) break;
    ray = Interval(std::nullopt, r.where.hi);
  }
  return ray;
}

}  // namespace gshift
