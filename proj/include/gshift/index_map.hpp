#ifndef GSHIFT_INDEX_MAP_HPP
#define GSHIFT_INDEX_MAP_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gshift/interval.hpp"
#include "gshift/polynomial.hpp"
#include "gshift/verdict.hpp"

namespace gshift {

inline constexpr unsigned kDefaultMaxDegree = 4;

struct Piece {
  Interval domain;
  Poly poly;
};

int cmp(const Piece& a, const Piece& b);

// Exact solution set of eval(map, n) = v: a sorted disjoint union of
// intervals (singletons included); unbounded intervals arise from constant
// pieces.
class PreimageSet {
 public:
  PreimageSet() = default;

  void add(Interval iv);
  void add_point(Int n) { add(Interval::point(std::move(n))); }
  void remove_point(const Int& n);

  bool empty() const { return parts_.empty(); }
  bool is_finite() const;
  Int count() const;  // finite sets only
  bool contains(const Int& n) const;
  std::vector<Int> enumerate() const;  // finite sets only, ascending
  std::optional<Interval> unbounded_part() const;
  const std::vector<Interval>& parts() const { return parts_; }
  std::string str() const;

 private:
  std::vector<Interval> parts_;
};

struct CollisionWitness {
  Int a, b;    // distinct points with equal image
  Int value;
};
struct GapWitness {
  Int value;  // no preimage
};
using BijectivityWitness = std::variant<CollisionWitness, GapWitness>;

struct BijectivityResult {
  Outcome outcome = Outcome::Unknown;
  std::optional<BijectivityWitness> witness;  // populated for No
  std::string note;
};

// A map Z -> Z: an ordered list of polynomial pieces partitioning Z, plus a
// finite table of exceptional values overriding the backbone. Instances are
// immutable and kept in a canonical form, so structural equality is reliable
// for maps produced by the same normalization pipeline.
class IndexMap {
 public:
  static IndexMap identity();
  static IndexMap constant(const Int& v);
  // Validates that the pieces partition Z (throws std::invalid_argument) and
  // canonicalizes.
  static IndexMap from_pieces(std::vector<Piece> pieces, std::map<Int, Int> exceptions = {});

  Int eval(const Int& n) const;
  Int operator()(const Int& n) const { return eval(n); }

  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::map<Int, Int>& exceptions() const { return exceptions_; }
  bool is_identity() const;

  // Extensional equality: same function on all of Z.
  bool same_function(const IndexMap& o) const;
  // A point where the two maps differ, when they do.
  std::optional<Int> distinguishing_point(const IndexMap& o) const;

  PreimageSet preimages(const Int& v) const;
  BijectivityResult bijectivity() const;

  // Finite piece endpoints and exception keys; natural probe candidates.
  std::vector<Int> boundary_points() const;

  std::string dsl() const;

 private:
  IndexMap() = default;
  void normalize();

  std::vector<Piece> pieces_;
  std::map<Int, Int> exceptions_;
};

// f after g: eval(compose(f,g), n) == f(g(n)). Throws DegreeError when a
// composite polynomial would exceed max_degree.
IndexMap compose(const IndexMap& f, const IndexMap& g, unsigned max_degree = kDefaultMaxDegree);

int cmp(const IndexMap& a, const IndexMap& b);
inline bool operator==(const IndexMap& a, const IndexMap& b) { return cmp(a, b) == 0; }
inline bool operator!=(const IndexMap& a, const IndexMap& b) { return cmp(a, b) != 0; }
inline bool operator<(const IndexMap& a, const IndexMap& b) { return cmp(a, b) < 0; }

}  // namespace gshift

#endif  // GSHIFT_INDEX_MAP_HPP
