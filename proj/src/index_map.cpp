#include "gshift/index_map.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace gshift {

int cmp(const Piece& a, const Piece& b) {
  if (int c = cmp(a.domain, b.domain)) return c;
  return cmp(a.poly, b.poly);
}

// ---------------------------------------------------------------------------
// PreimageSet

void PreimageSet::add(Interval iv) {
  parts_.push_back(std::move(iv));
  std::sort(parts_.begin(), parts_.end(),
            [](const Interval& a, const Interval& b) { return cmp(a, b) < 0; });
  std::vector<Interval> merged;
  for (auto& p : parts_) {
    if (!merged.empty()) {
      Interval& prev = merged.back();
      // Merge overlapping or adjacent parts.
      bool joins = !prev.hi || !p.lo || *p.lo <= *prev.hi + 1;
      if (joins) {
        if (prev.hi && (!p.hi || *p.hi > *prev.hi)) prev.hi = p.hi;
        continue;
      }
    }
    merged.push_back(p);
  }
  parts_ = std::move(merged);
}

void PreimageSet::remove_point(const Int& n) {
  std::vector<Interval> out;
  for (auto& p : parts_) {
    if (!p.contains(n)) {
      out.push_back(p);
      continue;
    }
    if (!p.lo || *p.lo < n) out.push_back(Interval(p.lo, Int(n - 1)));
    if (!p.hi || *p.hi > n) out.push_back(Interval(Int(n + 1), p.hi));
  }
  parts_ = std::move(out);
}

bool PreimageSet::is_finite() const {
  for (auto& p : parts_)
    if (!p.bounded()) return false;
  return true;
}

Int PreimageSet::count() const {
  Int total(0);
  for (auto& p : parts_) total += p.count();
  return total;
}

bool PreimageSet::contains(const Int& n) const {
  for (auto& p : parts_)
    if (p.contains(n)) return true;
  return false;
}

std::vector<Int> PreimageSet::enumerate() const {
  std::vector<Int> out;
  for (auto& p : parts_)
    for (Int n = *p.lo; n <= *p.hi; ++n) out.push_back(n);
  return out;
}

std::optional<Interval> PreimageSet::unbounded_part() const {
  for (auto& p : parts_)
    if (!p.bounded()) return p;
  return std::nullopt;
}

std::string PreimageSet::str() const {
  if (parts_.empty()) return "{}";
  std::string out;
  for (auto& p : parts_) {
    if (!out.empty()) out += " u ";
    out += p.is_singleton() ? "{" + to_string(*p.lo) + "}" : p.str();
  }
  return out;
}

// ---------------------------------------------------------------------------
// helpers

namespace {

// Does poly a equal poly b at every integer of d?
bool polys_agree_on(const Poly& a, const Poly& b, const Interval& d) {
  Poly diff = a - b;
  if (diff.is_zero()) return true;
  if (!d.bounded()) return false;  // non-zero polynomial: finitely many roots
  if (d.count() <= 8) {
    for (Int n = *d.lo; n <= *d.hi; ++n)
      if (diff.eval(n) != 0) return false;
    return true;
  }
  for (const SignRun& r : sign_runs(diff))
    if (r.sign == 0 && r.where.lo && r.where.hi && *r.where.lo <= *d.lo &&
        *d.hi <= *r.where.hi)
      return true;
  return false;
}

// First n in s with p(n) >= v, for p strictly increasing on s.
std::optional<Int> first_ge_inc(const Poly& p, const Interval& s, const Int& v) {
  if (s.hi && p.eval(*s.hi) < v) return std::nullopt;
  if (s.lo && p.eval(*s.lo) >= v) return *s.lo;
  // Bracket below: a point with p < v.
  Int lo;
  if (s.lo) {
    lo = *s.lo;
  } else {
    Int anchor = s.hi ? *s.hi : Int(0);
    Int step(1);
    lo = anchor;
    while (p.eval(lo) >= v) {
      lo = anchor - step;
      step *= 2;
    }
  }
  // Bracket above: a point with p >= v.
  Int hi;
  if (s.hi) {
    hi = *s.hi;
  } else {
    Int step(1);
    hi = lo;
    while (p.eval(hi) < v) {
      hi = lo + step;
      step *= 2;
    }
  }
  while (lo < hi) {
    Int mid = lo + (hi - lo) / 2;
    if (p.eval(mid) >= v)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

// Last n in s with p(n) >= v, for p strictly decreasing on s.
std::optional<Int> last_ge_dec(const Poly& p, const Interval& s, const Int& v) {
  if (s.lo && p.eval(*s.lo) < v) return std::nullopt;
  if (s.hi && p.eval(*s.hi) >= v) return *s.hi;
  Int lo;
  if (s.lo) {
    lo = *s.lo;
  } else {
    Int anchor = s.hi ? *s.hi : Int(0);
    Int step(1);
    lo = anchor;
    while (p.eval(lo) < v) {
      lo = anchor - step;
      step *= 2;
    }
  }
  Int hi;
  if (s.hi) {
    hi = *s.hi;
  } else {
    Int step(1);
    hi = lo;
    while (p.eval(hi) >= v) {
      hi = lo + step;
      step *= 2;
    }
  }
  // First n with p(n) < v, then step back.
  while (lo < hi) {
    Int mid = lo + (hi - lo) / 2;
    if (p.eval(mid) < v)
      hi = mid;
    else
      lo = mid + 1;
  }
  return Int(lo - 1);
}

}  // namespace

// ---------------------------------------------------------------------------
// IndexMap basics

IndexMap IndexMap::identity() {
  return from_pieces({Piece{Interval::all(), Poly::variable()}});
}

IndexMap IndexMap::constant(const Int& v) {
  return from_pieces({Piece{Interval::all(), Poly::constant(v)}});
}

IndexMap IndexMap::from_pieces(std::vector<Piece> pieces, std::map<Int, Int> exceptions) {
  IndexMap m;
  m.pieces_ = std::move(pieces);
  m.exceptions_ = std::move(exceptions);
  m.normalize();
  return m;
}

bool IndexMap::is_identity() const {
  return exceptions_.empty() && pieces_.size() == 1 && pieces_[0].poly.is_identity();
}

Int IndexMap::eval(const Int& n) const {
  auto it = exceptions_.find(n);
  if (it != exceptions_.end()) return it->second;
  for (const Piece& p : pieces_)
    if (p.domain.contains(n)) return p.poly.eval(n);
  throw std::logic_error("index map: pieces do not cover " + to_string(n));
}

// ---------------------------------------------------------------------------
// normalization

void IndexMap::normalize() {
  if (pieces_.empty()) throw std::invalid_argument("map: no pieces");
  std::sort(pieces_.begin(), pieces_.end(),
            [](const Piece& a, const Piece& b) { return cmp(a.domain, b.domain) < 0; });
  if (pieces_.front().domain.lo)
    throw std::invalid_argument("map: pieces do not cover all of Z (no -inf piece)");
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
    const auto& cur = pieces_[i].domain;
    const auto& nxt = pieces_[i + 1].domain;
    if (!cur.hi || !nxt.lo || *nxt.lo != *cur.hi + 1)
      throw std::invalid_argument("map: pieces overlap or leave a gap near " +
                                  (nxt.lo ? to_string(*nxt.lo) : std::string("-inf")));
  }
  if (pieces_.back().domain.hi)
    throw std::invalid_argument("map: pieces do not cover all of Z (no +inf piece)");

  // Fold exception entries into singleton pieces; they are re-extracted below
  // so equivalent inputs normalize identically.
  if (!exceptions_.empty()) {
    std::vector<Piece> flat;
    auto key = exceptions_.begin();
    for (const Piece& pc : pieces_) {
      std::optional<Int> cur_lo = pc.domain.lo;
      while (key != exceptions_.end() && pc.domain.contains(key->first)) {
        const Int& k = key->first;
        if (pc.poly.eval(k) == key->second) {
          ++key;
          continue;  // vacuous exception
        }
        if (!cur_lo || *cur_lo < k) flat.push_back({Interval(cur_lo, Int(k - 1)), pc.poly});
        flat.push_back({Interval::point(k), Poly::constant(key->second)});
        cur_lo = k + 1;
        ++key;
      }
      bool empty_tail = cur_lo && pc.domain.hi && *cur_lo > *pc.domain.hi;
      if (!empty_tail) flat.push_back({Interval(cur_lo, pc.domain.hi), pc.poly});
    }
    pieces_ = std::move(flat);
    exceptions_.clear();
  }

  // Canonical polynomial representative on small windows.
  for (Piece& pc : pieces_) {
    if (!pc.domain.bounded()) continue;
    Int n = pc.domain.count();
    if (n <= pc.poly.degree())
      pc.poly = pc.poly.reduced_for_window(*pc.domain.lo, static_cast<unsigned>(n.get_ui()));
  }

  bool changed = true;
  while (changed) {
    changed = false;

    // Merge adjacent pieces expressible by one polynomial.
    std::vector<Piece> merged;
    for (Piece& pc : pieces_) {
      if (merged.empty()) {
        merged.push_back(std::move(pc));
        continue;
      }
      Piece& prev = merged.back();
      std::optional<Poly> joint;
      if (polys_agree_on(prev.poly, pc.poly, pc.domain))
        joint = prev.poly;
      else if (polys_agree_on(pc.poly, prev.poly, prev.domain))
        joint = pc.poly;
      if (joint) {
        Interval u(prev.domain.lo, pc.domain.hi);
        Poly p = *joint;
        if (u.bounded() && u.count() <= p.degree())
          p = p.reduced_for_window(*u.lo, static_cast<unsigned>(u.count().get_ui()));
        prev = Piece{u, std::move(p)};
        changed = true;
      } else {
        merged.push_back(std::move(pc));
      }
    }
    pieces_ = std::move(merged);

    // Re-extract singleton runs whose removal lets the flanks merge; those
    // points become exceptions over the merged backbone.
    for (std::size_t i = 1; i + 1 < pieces_.size(); ++i) {
      if (!pieces_[i].domain.is_singleton()) continue;
      std::size_t j = i;
      while (j + 1 < pieces_.size() && pieces_[j + 1].domain.is_singleton()) ++j;
      if (j + 1 >= pieces_.size()) break;  // no right flank piece
      const Piece& left = pieces_[i - 1];
      const Piece& right = pieces_[j + 1];
      std::optional<Poly> joint;
      if (polys_agree_on(left.poly, right.poly, right.domain))
        joint = left.poly;
      else if (polys_agree_on(right.poly, left.poly, left.domain))
        joint = right.poly;
      if (!joint) {
        i = j;
        continue;
      }
      for (std::size_t t = i; t <= j; ++t) {
        const Int& k = *pieces_[t].domain.lo;
        Int v = pieces_[t].poly.eval(k);
        if (joint->eval(k) != v) exceptions_[k] = v;
      }
      Interval u(left.domain.lo, right.domain.hi);
      Poly p = *joint;
      if (u.bounded() && u.count() <= p.degree())
        p = p.reduced_for_window(*u.lo, static_cast<unsigned>(u.count().get_ui()));
      std::vector<Piece> next;
      next.insert(next.end(), pieces_.begin(), pieces_.begin() + (i - 1));
      next.push_back(Piece{u, std::move(p)});
      next.insert(next.end(), pieces_.begin() + (j + 2), pieces_.end());
      pieces_ = std::move(next);
      changed = true;
      break;  // piece indices shifted; rescan
    }
  }
}

// ---------------------------------------------------------------------------
// equality

std::optional<Int> IndexMap::distinguishing_point(const IndexMap& o) const {
  std::vector<Int> keys;
  for (auto& [k, v] : exceptions_) keys.push_back(k);
  for (auto& [k, v] : o.exceptions_) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (const Int& k : keys)
    if (eval(k) != o.eval(k)) return k;

  for (const Piece& pa : pieces_) {
    for (const Piece& pb : o.pieces_) {
      auto ov = pa.domain.intersect(pb.domain);
      if (!ov) continue;
      Poly diff = pa.poly - pb.poly;
      if (diff.is_zero()) continue;
      // Fragments of the overlap between exception keys (keys were checked).
      std::vector<Interval> frags;
      std::optional<Int> cur_lo = ov->lo;
      bool dead = false;
      for (const Int& k : keys) {
        if (!ov->contains(k)) continue;
        if (!cur_lo || *cur_lo < k) frags.push_back(Interval(cur_lo, Int(k - 1)));
        cur_lo = k + 1;
        if (ov->hi && *cur_lo > *ov->hi) {
          dead = true;
          break;
        }
      }
      if (!dead) frags.push_back(Interval(cur_lo, ov->hi));
      for (const Interval& f : frags) {
        for (const SignRun& r : sign_runs(diff)) {
          if (r.sign == 0) continue;
          auto hit = f.intersect(r.where);
          if (!hit) continue;
          if (hit->lo) return *hit->lo;
          if (hit->hi) return *hit->hi;
          return Int(0);
        }
      }
    }
  }
  return std::nullopt;
}

bool IndexMap::same_function(const IndexMap& o) const {
  if (cmp(*this, o) == 0) return true;
  return !distinguishing_point(o).has_value();
}

// ---------------------------------------------------------------------------
// preimages

PreimageSet IndexMap::preimages(const Int& v) const {
  PreimageSet out;
  for (const Piece& pc : pieces_) {
    if (pc.poly.is_constant()) {
      if (pc.poly.eval(0) == v) out.add(pc.domain);
    } else {
      for (const Int& r : integer_roots(pc.poly - Poly::constant(v)))
        if (pc.domain.contains(r)) out.add_point(r);
    }
  }
  for (auto& [k, val] : exceptions_) {
    if (val == v) {
      out.add_point(k);
    } else if (out.contains(k)) {
      out.remove_point(k);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// bijectivity

namespace {

struct ImagePart {
  Interval iv;
  std::size_t piece;           // source piece index
  std::optional<Int> exc_key;  // or source exception key
};

// Preimage of value v under an affine slope +-1 / singleton piece.
Int invert_simple_piece(const Piece& pc, const Int& v) {
  if (pc.domain.is_singleton()) return *pc.domain.lo;
  const Int& slope = pc.poly.coeff(1);
  Int b = pc.poly.coeff(0);
  return slope == 1 ? Int(v - b) : Int(b - v);
}

}  // namespace

BijectivityResult IndexMap::bijectivity() const {
  BijectivityResult res;

  // A constant piece on two or more points collides immediately.
  for (const Piece& pc : pieces_) {
    if (pc.poly.is_constant() && !pc.domain.is_singleton()) {
      Int a = pc.domain.lo ? *pc.domain.lo : (*pc.domain.hi - 1);
      res.outcome = Outcome::No;
      res.witness = CollisionWitness{a, a + 1, pc.poly.eval(a)};
      res.note = "constant piece on a non-singleton domain";
      return res;
    }
  }

  bool certifiable = true;
  for (const Piece& pc : pieces_) {
    if (pc.domain.is_singleton()) continue;
    if (pc.poly.degree() == 1 && abs_int(pc.poly.coeff(1)) == 1) continue;
    certifiable = false;
    break;
  }

  if (certifiable) {
    // Exact route: piece images are intervals; verify they tile Z after the
    // exception adjustments.
    std::vector<ImagePart> parts;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const Piece& pc = pieces_[i];
      if (pc.domain.is_singleton()) {
        parts.push_back({Interval::point(pc.poly.eval(*pc.domain.lo)), i, std::nullopt});
        continue;
      }
      const Int& slope = pc.poly.coeff(1);
      Int b = pc.poly.coeff(0);
      std::optional<Int> ilo, ihi;
      if (slope == 1) {
        if (pc.domain.lo) ilo = *pc.domain.lo + b;
        if (pc.domain.hi) ihi = *pc.domain.hi + b;
      } else {
        if (pc.domain.hi) ilo = b - *pc.domain.hi;
        if (pc.domain.lo) ihi = b - *pc.domain.lo;
      }
      parts.push_back({Interval(ilo, ihi), i, std::nullopt});
    }
    // Exceptions: the containing piece's image loses the backbone value and
    // the exception value is added as a singleton.
    for (auto& [k, val] : exceptions_) {
      for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (!pieces_[i].domain.contains(k)) continue;
        Int backbone = pieces_[i].poly.eval(k);
        std::vector<ImagePart> next;
        for (auto& part : parts) {
          if (part.piece != i || part.exc_key || !part.iv.contains(backbone)) {
            next.push_back(part);
            continue;
          }
          if (!part.iv.lo || *part.iv.lo < backbone)
            next.push_back({Interval(part.iv.lo, Int(backbone - 1)), i, std::nullopt});
          if (!part.iv.hi || *part.iv.hi > backbone)
            next.push_back({Interval(Int(backbone + 1), part.iv.hi), i, std::nullopt});
        }
        parts = std::move(next);
        break;
      }
      parts.push_back({Interval::point(val), pieces_.size(), k});
    }

    std::sort(parts.begin(), parts.end(),
              [](const ImagePart& a, const ImagePart& b) { return cmp(a.iv, b.iv) < 0; });

    auto invert = [&](const ImagePart& part, const Int& v) -> Int {
      if (part.exc_key) return *part.exc_key;
      return invert_simple_piece(pieces_[part.piece], v);
    };

    if (parts.empty() || parts.front().iv.lo) {
      res.outcome = Outcome::No;
      res.witness = GapWitness{parts.empty() ? Int(0) : Int(*parts.front().iv.lo - 1)};
      res.note = "image does not cover -inf ray";
      return res;
    }
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
      const Interval& a = parts[i].iv;
      const Interval& b = parts[i + 1].iv;
      if (auto ov = a.intersect(b)) {
        Int v = ov->lo ? *ov->lo : (ov->hi ? *ov->hi : Int(0));
        Int x = invert(parts[i], v);
        Int y = invert(parts[i + 1], v);
        res.outcome = Outcome::No;
        res.witness = CollisionWitness{x, y, v};
        res.note = "overlapping piece images";
        return res;
      }
      // Disjoint and sorted: both facing bounds are finite here.
      if (*b.lo > *a.hi + 1) {
        res.outcome = Outcome::No;
        res.witness = GapWitness{Int(*a.hi + 1)};
        res.note = "value not attained by any piece";
        return res;
      }
    }
    if (parts.back().iv.hi) {
      res.outcome = Outcome::No;
      res.witness = GapWitness{Int(*parts.back().iv.hi + 1)};
      res.note = "image does not cover +inf ray";
      return res;
    }
    res.outcome = Outcome::Yes;
    res.note = "unit-slope pieces with images tiling Z";
    return res;
  }

  // Search window: witnesses only, no certificate for this map class.
  std::vector<Int> candidates;
  for (Int n(-48); n <= 48; ++n) candidates.push_back(n);
  for (const Int& b : boundary_points())
    for (Int d(-2); d <= 2; ++d) candidates.push_back(b + d);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::map<Int, Int> seen;
  for (const Int& n : candidates) {
    Int v = eval(n);
    auto [it, fresh] = seen.emplace(v, n);
    if (!fresh) {
      res.outcome = Outcome::No;
      res.witness = CollisionWitness{it->second, n, v};
      res.note = "collision found in search window";
      return res;
    }
  }
  for (Int v(-32); v <= 32; ++v) {
    if (preimages(v).empty()) {
      res.outcome = Outcome::No;
      res.witness = GapWitness{v};
      res.note = "empty preimage found in search window";
      return res;
    }
  }
  res.outcome = Outcome::Unknown;
  res.note = "no unit-slope certificate; no witness in search window";
  return res;
}

std::vector<Int> IndexMap::boundary_points() const {
  std::vector<Int> out;
  for (const Piece& pc : pieces_) {
    if (pc.domain.lo) out.push_back(*pc.domain.lo);
    if (pc.domain.hi) out.push_back(*pc.domain.hi);
  }
  for (auto& [k, v] : exceptions_) out.push_back(k);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// composition

IndexMap compose(const IndexMap& f, const IndexMap& g, unsigned max_degree) {
  std::vector<Piece> out;
  std::map<Int, Int> exc;

  const auto& fp = f.pieces();
  std::vector<Int> cuts;  // f piece boundaries: piece j >= 1 starts at cuts[j-1]
  for (std::size_t j = 1; j < fp.size(); ++j) cuts.push_back(*fp[j].domain.lo);

  for (const Piece& gp : g.pieces()) {
    const Poly& p = gp.poly;
    if (p.is_constant()) {
      out.push_back({gp.domain, Poly::constant(f.eval(p.eval(0)))});
      continue;
    }
    for (const SignRun& run : sign_runs(p.delta())) {
      auto seg_opt = gp.domain.intersect(run.where);
      if (!seg_opt) continue;
      const Interval& seg = *seg_opt;
      if (run.sign == 0) {
        // p takes a single value across this (finite) run.
        out.push_back({seg, Poly::constant(f.eval(p.eval(*seg.lo)))});
        continue;
      }
      bool inc = run.sign > 0;
      for (std::size_t j = 0; j < fp.size(); ++j) {
        const Int* lower = j == 0 ? nullptr : &cuts[j - 1];
        const Int* upper = j + 1 < fp.size() ? &cuts[j] : nullptr;
        std::optional<Int> from, to;
        bool empty = false;
        if (inc) {
          from = seg.lo;
          if (lower) {
            auto t = first_ge_inc(p, seg, *lower);
            if (!t)
              empty = true;
            else
              from = *t;
          }
          to = seg.hi;
          if (upper) {
            auto t = first_ge_inc(p, seg, *upper);
            if (t) to = *t - 1;
          }
        } else {
          from = seg.lo;
          if (upper) {
            auto u = last_ge_dec(p, seg, *upper);
            if (u) from = *u + 1;
          }
          to = seg.hi;
          if (lower) {
            auto u = last_ge_dec(p, seg, *lower);
            if (!u)
              empty = true;
            else
              to = *u;
          }
        }
        if (empty || (from && to && *from > *to)) continue;
        out.push_back({Interval(from, to), fp[j].poly.compose(p, max_degree)});
      }
    }
    // Pull back f's exceptional inputs through this piece.
    for (auto& [e, val] : f.exceptions()) {
      for (const Int& r : integer_roots(p - Poly::constant(e)))
        if (gp.domain.contains(r)) exc[r] = val;
    }
  }
  for (auto& [k, v] : g.exceptions()) exc[k] = f.eval(v);
  return IndexMap::from_pieces(std::move(out), std::move(exc));
}

int cmp(const IndexMap& a, const IndexMap& b) {
  if (a.pieces().size() != b.pieces().size())
    return a.pieces().size() < b.pieces().size() ? -1 : 1;
  for (std::size_t i = 0; i < a.pieces().size(); ++i)
    if (int c = cmp(a.pieces()[i], b.pieces()[i])) return c;
  auto ia = a.exceptions().begin();
  auto ib = b.exceptions().begin();
  for (; ia != a.exceptions().end() && ib != b.exceptions().end(); ++ia, ++ib) {
    if (int c = cmp_int(ia->first, ib->first)) return c;
    if (int c = cmp_int(ia->second, ib->second)) return c;
  }
  if (ia != a.exceptions().end()) return 1;
  if (ib != b.exceptions().end()) return -1;
  return 0;
}

// ---------------------------------------------------------------------------
// printing

namespace {

std::string cond_str(const Interval& d) {
  if (d.is_all()) return "all";
  if (!d.lo) return "n<=" + to_string(*d.hi);
  if (!d.hi) return "n>=" + to_string(*d.lo);
  if (d.is_singleton()) return "n==" + to_string(*d.lo);
  return to_string(*d.lo) + "<=n<=" + to_string(*d.hi);
}

}  // namespace

std::string IndexMap::dsl() const {
  std::ostringstream os;
  for (const Piece& pc : pieces_) os << "piece " << cond_str(pc.domain) << ": " << pc.poly.str() << "\n";
  for (auto& [k, v] : exceptions_) os << "except " << to_string(k) << " -> " << to_string(v) << "\n";
  return os.str();
}

}  // namespace gshift
