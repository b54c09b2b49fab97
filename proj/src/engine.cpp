#include "gshift/engine.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace gshift {

ClosureResult closure(const Presentation& p, const EngineConfig& cfg) {
  ClosureResult res;
  std::map<IndexMap, std::size_t> seen;  // map -> index into elements
  std::deque<std::size_t> queue;

  res.elements.push_back({IndexMap::identity(), Word{}});
  seen.emplace(res.elements[0].map, 0);
  queue.push_back(0);

  bool degree_capped = false;
  bool budget_hit = false;

  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    for (const Generator& g : p.generators()) {
      IndexMap nm;
      try {
        nm = compose(g.map, res.elements[cur].map, cfg.max_degree);
      } catch (const DegreeError&) {
        degree_capped = true;
        continue;
      }
      if (seen.count(nm)) continue;
      if (res.elements.size() >= cfg.closure_budget) {
        budget_hit = true;
        queue.clear();
        break;
      }
      Word w = res.elements[cur].word.extended(g.name);
      res.elements.push_back({nm, std::move(w)});
      seen.emplace(res.elements.back().map, res.elements.size() - 1);
      queue.push_back(res.elements.size() - 1);
    }
    if (budget_hit) break;
  }

  res.frontier = queue.size();
  if (budget_hit) {
    res.incomplete_reason = "budget";
  } else if (degree_capped) {
    res.incomplete_reason = "degree-cap";
  } else {
    res.complete = true;
    // Structural dedup could in principle admit two representations of one
    // function; collapse extensionally before claiming the exact semigroup.
    std::vector<WordMap> unique_elems;
    for (auto& wm : res.elements) {
      bool dup = false;
      for (auto& kept : unique_elems)
        if (kept.map.same_function(wm.map)) {
          dup = true;
          break;
        }
      if (!dup) unique_elems.push_back(std::move(wm));
    }
    res.elements = std::move(unique_elems);
  }
  return res;
}

// ---------------------------------------------------------------------------
// escape rays

std::vector<EscapeRay> escape_rays(const Presentation& p, const EngineConfig& cfg) {
  EngineConfig sample_cfg = cfg;
  sample_cfg.closure_budget = std::min(cfg.ray_sample, cfg.closure_budget);
  ClosureResult sample = closure(p, sample_cfg);

  std::vector<EscapeRay> rays;
  for (const WordMap& wm : sample.elements) {
    if (wm.map.is_identity()) continue;
    const auto& pieces = wm.map.pieces();
    const auto& exc = wm.map.exceptions();

    {  // upward: last piece
      const Piece& last = pieces.back();
      Poly gap = last.poly - Poly::variable();
      auto s1 = positive_suffix_start(gap);
      auto s2 = nonnegative_suffix_start(last.poly.delta());
      if (s1 && s2) {
        Int b = std::max(*s1, *s2);
        if (last.domain.lo) b = std::max(b, *last.domain.lo);
        if (!exc.empty()) b = std::max(b, Int(exc.rbegin()->first + 1));
        rays.push_back({wm, b, true});
      }
    }
    {  // downward: first piece
      const Piece& first = pieces.front();
      Poly gap = first.poly - Poly::variable();
      auto e1 = negative_prefix_end(gap);
      auto e2 = nonnegative_prefix_end(first.poly.delta());
      if (e1 && e2) {
        Int b = std::min(*e1, Int(*e2 + 1));
        if (first.domain.hi) b = std::min(b, *first.domain.hi);
        if (!exc.empty()) b = std::min(b, Int(exc.begin()->first - 1));
        rays.push_back({wm, b, false});
      }
    }
  }
  return rays;
}

namespace {

std::optional<EscapeCertificate> certify(const std::vector<EscapeRay>& rays, const Int& base,
                                         const Int& point, const Word& word) {
  for (const EscapeRay& r : rays) {
    bool hit = r.upward ? point >= r.bound : point <= r.bound;
    if (hit) return EscapeCertificate{r.psi.word, base, word, point, r.bound, r.upward};
  }
  return std::nullopt;
}

OrbitResult forward_bfs(const Presentation& p, const std::vector<Int>& bases,
                        const EngineConfig& cfg) {
  OrbitResult res;
  std::vector<EscapeRay> rays = escape_rays(p, cfg);

  std::map<Int, std::size_t> seen;
  std::deque<std::size_t> queue;
  auto admit = [&](const Int& point, Word word, const Int& base) -> bool {
    if (seen.count(point)) return false;
    if (auto cert = certify(rays, base, point, word)) {
      res.points.push_back({point, std::move(word), base});
      res.status = OrbitResult::Status::InfiniteCertified;
      res.evidence = std::move(*cert);
      return true;
    }
    res.points.push_back({point, std::move(word), base});
    seen.emplace(point, res.points.size() - 1);
    queue.push_back(res.points.size() - 1);
    return false;
  };

  for (const Int& b : bases) {
    if (admit(b, Word{}, b)) {
      res.budget_spent = res.points.size();
      return res;
    }
  }
  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    for (const Generator& g : p.generators()) {
      Int v = g.map.eval(res.points[cur].point);
      if (seen.count(v)) continue;
      if (seen.size() >= cfg.orbit_budget) {
        res.status = OrbitResult::Status::Unknown;
        res.budget_spent = seen.size();
        res.frontier = queue.size() + 1;
        return res;
      }
      if (admit(v, res.points[cur].word.extended(g.name), res.points[cur].base)) {
        res.budget_spent = seen.size();
        return res;
      }
    }
  }
  res.status = OrbitResult::Status::Finite;
  res.budget_spent = seen.size();
  return res;
}

}  // namespace

OrbitResult orbit(const Presentation& p, const Int& w, const EngineConfig& cfg) {
  return forward_bfs(p, {w}, cfg);
}

OrbitResult orbit_set(const Presentation& p, const std::vector<Int>& base_set,
                      const EngineConfig& cfg) {
  return forward_bfs(p, base_set, cfg);
}

OrbitResult inverse_orbit(const Presentation& p, const Int& w, const EngineConfig& cfg) {
  OrbitResult res;
  std::map<Int, std::size_t> seen;
  std::deque<std::size_t> queue;

  res.points.push_back({w, Word{}, w});
  seen.emplace(w, 0);
  queue.push_back(0);

  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    for (const Generator& g : p.generators()) {
      PreimageSet pre = g.map.preimages(res.points[cur].point);
      if (auto ray = pre.unbounded_part()) {
        res.status = OrbitResult::Status::InfiniteCertified;
        res.evidence = PreimageRayCertificate{g.name, w, res.points[cur].word,
                                              res.points[cur].point, *ray};
        res.budget_spent = seen.size();
        return res;
      }
      for (const Interval& part : pre.parts()) {
        for (Int u = *part.lo; u <= *part.hi; ++u) {
          if (seen.count(u)) continue;
          if (seen.size() >= cfg.orbit_budget) {
            res.status = OrbitResult::Status::Unknown;
            res.budget_spent = seen.size();
            res.frontier = queue.size() + 1;
            return res;
          }
          res.points.push_back({u, res.points[cur].word.prefixed(g.name), w});
          seen.emplace(u, res.points.size() - 1);
          queue.push_back(res.points.size() - 1);
        }
      }
    }
  }
  res.status = OrbitResult::Status::Finite;
  res.budget_spent = seen.size();
  return res;
}

CoverageReport coverage(const Presentation& p, const std::vector<Int>& H,
                        const Interval& window, const EngineConfig& cfg) {
  CoverageReport rep;
  rep.H = H;
  std::sort(rep.H.begin(), rep.H.end());
  rep.H.erase(std::unique(rep.H.begin(), rep.H.end()), rep.H.end());
  rep.window = window;
  if (!window.bounded()) throw std::invalid_argument("coverage: window must be finite");

  std::map<Int, OrbitPoint> reached;  // window points only
  auto outstanding = [&]() { return window.count() - Int(reached.size()); };

  std::map<Int, std::size_t> seen;
  std::deque<std::size_t> queue;
  std::vector<OrbitPoint> pts;
  auto admit = [&](const Int& point, Word word, const Int& base) {
    if (seen.count(point)) return;
    pts.push_back({point, std::move(word), base});
    seen.emplace(point, pts.size() - 1);
    queue.push_back(pts.size() - 1);
    if (window.contains(point)) reached.emplace(point, pts.back());
  };

  for (const Int& h : rep.H) admit(h, Word{}, h);

  while (!queue.empty() && outstanding() > 0 && seen.size() < cfg.orbit_budget) {
    std::size_t cur = queue.front();
    queue.pop_front();
    for (const Generator& g : p.generators()) {
      Int v = g.map.eval(pts[cur].point);
      admit(v, pts[cur].word.extended(g.name), pts[cur].base);
    }
  }

  rep.budget_spent = seen.size();
  rep.covered = outstanding() == 0;
  for (Int n = *window.lo; n <= *window.hi; ++n) {
    auto it = reached.find(n);
    if (it != reached.end())
      rep.reach_words.push_back(it->second);
    else
      rep.missing.push_back(n);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// certificate re-checking

CheckResult check_escape(const EscapeCertificate& cert, const Presentation& p,
                         const EngineConfig& cfg) {
  if (p.apply_word(cert.seed_word, cert.base) != cert.seed)
    return {false, "seed word does not reach the seed from the base point"};

  IndexMap psi;
  try {
    psi = p.word_map(cert.word, cfg.max_degree);
  } catch (const DegreeError&) {
    return {false, "certificate word is not representable within the degree cap"};
  } catch (const std::invalid_argument&) {
    return {false, "certificate word uses unknown generators"};
  }
  if (psi.is_identity()) return {false, "certificate word denotes the identity"};

  const auto& exc = psi.exceptions();
  if (cert.upward) {
    if (cert.seed < cert.bound) return {false, "seed below the bound"};
    const Piece& last = psi.pieces().back();
    if (last.domain.lo && cert.bound < *last.domain.lo)
      return {false, "bound not inside the final piece"};
    if (!exc.empty() && exc.rbegin()->first >= cert.bound)
      return {false, "exception key inside the ray"};
    auto s1 = positive_suffix_start(last.poly - Poly::variable());
    if (!s1 || *s1 > cert.bound) return {false, "psi(n)-n not positive on the ray"};
    auto s2 = nonnegative_suffix_start(last.poly.delta());
    if (!s2 || *s2 > cert.bound) return {false, "psi not nondecreasing on the ray"};
  } else {
    if (cert.seed > cert.bound) return {false, "seed above the bound"};
    const Piece& first = psi.pieces().front();
    if (first.domain.hi && cert.bound > *first.domain.hi)
      return {false, "bound not inside the initial piece"};
    if (!exc.empty() && exc.begin()->first <= cert.bound)
      return {false, "exception key inside the ray"};
    auto e1 = negative_prefix_end(first.poly - Poly::variable());
    if (!e1 || *e1 < cert.bound) return {false, "psi(n)-n not negative on the ray"};
    auto e2 = nonnegative_prefix_end(first.poly.delta());
    if (!e2 || *e2 < cert.bound - 1) return {false, "psi not nondecreasing on the ray"};
  }
  return {true, ""};
}

CheckResult check_preimage_ray(const PreimageRayCertificate& cert, const Presentation& p,
                               const EngineConfig& cfg) {
  (void)cfg;
  if (p.apply_word(cert.target_word, cert.target) != cert.base)
    return {false, "target word does not reach the base point"};
  if (cert.ray.bounded()) return {false, "certificate ray is finite"};
  const IndexMap* gen = nullptr;
  for (const Generator& g : p.generators())
    if (g.name == cert.generator) gen = &g.map;
  if (!gen) return {false, "certificate names an unknown generator"};
  PreimageSet pre = gen->preimages(cert.target);
  for (const Interval& part : pre.parts()) {
    bool lo_ok = !part.lo || (cert.ray.lo && *part.lo <= *cert.ray.lo);
    bool hi_ok = !part.hi || (cert.ray.hi && *part.hi >= *cert.ray.hi);
    if (lo_ok && hi_ok) return {true, ""};
  }
  return {false, "ray is not contained in the generator preimage"};
}

CheckResult check_infinite_evidence(const InfiniteEvidence& ev, const Presentation& p,
                                    const EngineConfig& cfg) {
  if (auto* esc = std::get_if<EscapeCertificate>(&ev)) return check_escape(*esc, p, cfg);
  return check_preimage_ray(std::get<PreimageRayCertificate>(ev), p, cfg);
}

}  // namespace gshift
