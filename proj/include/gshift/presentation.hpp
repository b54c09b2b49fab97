#ifndef GSHIFT_PRESENTATION_HPP
#define GSHIFT_PRESENTATION_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "gshift/index_map.hpp"

namespace gshift {

// A composition word over named generators. Letters are stored in
// application order: the first letter acts first, the last one outermost.
// The empty word denotes the identity map.
struct Word {
  std::vector<std::string> letters;

  bool is_identity() const { return letters.empty(); }
  Word extended(const std::string& outermost) const {
    Word w = *this;
    w.letters.push_back(outermost);
    return w;
  }
  Word prefixed(const std::string& innermost) const {
    Word w;
    w.letters.reserve(letters.size() + 1);
    w.letters.push_back(innermost);
    w.letters.insert(w.letters.end(), letters.begin(), letters.end());
    return w;
  }
  std::string str() const {
    if (letters.empty()) return "id";
    std::string out;
    for (const auto& l : letters) {
      if (!out.empty()) out += ".";
      out += l;
    }
    return out;
  }
};

inline bool operator==(const Word& a, const Word& b) { return a.letters == b.letters; }

struct Generator {
  std::string name;
  IndexMap map;
};

// The generating set of the index semigroup. The identity is implicit: it is
// always an element of the semigroup and never needs to be listed.
class Presentation {
 public:
  explicit Presentation(std::vector<Generator> gens) : gens_(std::move(gens)) {
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (gens_[i].name.empty()) throw std::invalid_argument("presentation: empty generator name");
      for (std::size_t j = i + 1; j < gens_.size(); ++j)
        if (gens_[i].name == gens_[j].name)
          throw std::invalid_argument("presentation: duplicate generator " + gens_[i].name);
    }
  }

  const std::vector<Generator>& generators() const { return gens_; }

  const IndexMap& map_of(const std::string& name) const {
    for (const auto& g : gens_)
      if (g.name == name) return g.map;
    throw std::invalid_argument("presentation: unknown generator " + name);
  }

  Int apply_word(const Word& w, Int n) const {
    for (const auto& l : w.letters) n = map_of(l).eval(n);
    return n;
  }

  IndexMap word_map(const Word& w, unsigned max_degree) const {
    IndexMap m = IndexMap::identity();
    for (const auto& l : w.letters) m = compose(map_of(l), m, max_degree);
    return m;
  }

  // [-8, 8] plus every piece boundary and exception key of every generator.
  std::vector<Int> default_probes() const {
    std::vector<Int> out;
    for (Int n(-8); n <= 8; ++n) out.push_back(n);
    for (const auto& g : gens_)
      for (const Int& b : g.map.boundary_points()) out.push_back(b);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  std::vector<Generator> gens_;
};

}  // namespace gshift

#endif  // GSHIFT_PRESENTATION_HPP
