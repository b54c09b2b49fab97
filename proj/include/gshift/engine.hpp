#ifndef GSHIFT_ENGINE_HPP
#define GSHIFT_ENGINE_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gshift/presentation.hpp"

namespace gshift {

struct EngineConfig {
  std::size_t orbit_budget = 10000;   // max points per orbit query
  std::size_t closure_budget = 1000;  // max maps per closure
  unsigned max_degree = kDefaultMaxDegree;
  std::size_t ray_sample = 64;  // closure prefix used for escape candidates
};

struct WordMap {
  IndexMap map;
  Word word;
};

struct ClosureResult {
  bool complete = false;
  std::string incomplete_reason;  // "budget" | "degree-cap" when incomplete
  std::vector<WordMap> elements;  // identity first, then BFS discovery order
  std::size_t frontier = 0;       // unexplored elements when incomplete
};

// BFS closure of the generators under composition, including the identity.
ClosureResult closure(const Presentation& p, const EngineConfig& cfg);

// Certifies an infinite forward orbit: psi \in T maps [bound, +inf) into
// itself strictly increasing (resp. the mirrored downward ray), and seed is a
// reachable orbit point inside the ray, so iterating psi never repeats.
struct EscapeCertificate {
  Word word;       // psi
  Int base;        // orbit base point w
  Word seed_word;  // reaches seed from base
  Int seed;
  Int bound;
  bool upward = true;
};

// Certifies an infinite inverse orbit: an entire infinite interval maps to
// `target` under one generator, and target already reaches the base point.
struct PreimageRayCertificate {
  std::string generator;
  Int base;
  Word target_word;  // maps target to base
  Int target;
  Interval ray;
};

using InfiniteEvidence = std::variant<EscapeCertificate, PreimageRayCertificate>;

struct OrbitPoint {
  Int point;
  Word word;
  Int base;
};

struct OrbitResult {
  enum class Status { Finite, InfiniteCertified, Unknown };
  Status status = Status::Unknown;
  std::vector<OrbitPoint> points;  // Finite: the exact orbit (discovery order)
  std::optional<InfiniteEvidence> evidence;
  std::size_t budget_spent = 0;
  std::size_t frontier = 0;
};

OrbitResult orbit(const Presentation& p, const Int& w, const EngineConfig& cfg);
OrbitResult inverse_orbit(const Presentation& p, const Int& w, const EngineConfig& cfg);
OrbitResult orbit_set(const Presentation& p, const std::vector<Int>& base_set,
                      const EngineConfig& cfg);

struct CoverageReport {
  std::vector<Int> H;
  Interval window;
  bool covered = false;
  std::vector<Int> missing;             // window points not reached
  std::vector<OrbitPoint> reach_words;  // covered window points, ascending
  std::size_t budget_spent = 0;
};

// Forward reachability from H checked against a finite window.
CoverageReport coverage(const Presentation& p, const std::vector<Int>& H,
                        const Interval& window, const EngineConfig& cfg);

struct CheckResult {
  bool ok = false;
  std::string reason;  // names the failed condition when !ok
};

// Re-derives every claim of a certificate from sign analysis and word
// evaluation; independent of how the engine found it.
CheckResult check_escape(const EscapeCertificate& cert, const Presentation& p,
                         const EngineConfig& cfg);
CheckResult check_preimage_ray(const PreimageRayCertificate& cert, const Presentation& p,
                               const EngineConfig& cfg);
CheckResult check_infinite_evidence(const InfiniteEvidence& ev, const Presentation& p,
                                    const EngineConfig& cfg);

// Candidate escape rays harvested from a budgeted closure sample.
struct EscapeRay {
  WordMap psi;
  Int bound;
  bool upward;
};
std::vector<EscapeRay> escape_rays(const Presentation& p, const EngineConfig& cfg);

}  // namespace gshift

#endif  // GSHIFT_ENGINE_HPP
