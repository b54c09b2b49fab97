#ifndef GSHIFT_VERDICT_HPP
#define GSHIFT_VERDICT_HPP

#include <string>

namespace gshift {

enum class Outcome { Yes, No, Unknown };

inline std::string outcome_str(Outcome o) {
  switch (o) {
    case Outcome::Yes: return "yes";
    case Outcome::No: return "no";
    default: return "unknown";
  }
}

inline Outcome negate(Outcome o) {
  if (o == Outcome::Yes) return Outcome::No;
  if (o == Outcome::No) return Outcome::Yes;
  return Outcome::Unknown;
}

}  // namespace gshift

#endif  // GSHIFT_VERDICT_HPP
