#ifndef GSHIFT_DSL_HPP
#define GSHIFT_DSL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gshift/index_map.hpp"
#include "gshift/presentation.hpp"

namespace gshift {

struct ParseError : std::runtime_error {
  ParseError(std::string msg, int line_, int col_)
      : std::runtime_error("line " + std::to_string(line_) + ", col " + std::to_string(col_) +
                           ": " + msg),
        line(line_),
        col(col_) {}
  int line;
  int col;
};

// Map DSL, line- or ';'-separated statements:
//   piece <cond>: <poly>     cond: all | n>=a | n<=a | n==a | a<=n<=b
//   except a -> b
// Polynomials use n, integer literals and + - * ^ (); '#' starts a comment.
IndexMap parse_map(const std::string& text, unsigned max_degree = kDefaultMaxDegree);

// Analysis parameters accepted in presentation files via `param` lines.
struct FileParams {
  std::optional<std::size_t> budget_orbit;
  std::optional<std::size_t> budget_closure;
  std::optional<Int> probes_lo, probes_hi;
  std::optional<Int> max_h;
  std::optional<Int> window_lo, window_hi;
  std::optional<unsigned long> seed;
  std::optional<unsigned> max_degree;
};

// Presentation file: `map <name>:` opens a generator whose DSL statements
// follow (same line after the colon and/or subsequent lines); `param <key>
// <value>` lines set analysis defaults.
struct PresentationFile {
  Presentation presentation;
  FileParams params;
};

PresentationFile parse_presentation(const std::string& text);

}  // namespace gshift

#endif  // GSHIFT_DSL_HPP
