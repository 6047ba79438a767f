#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ltlrl {

/* All user-facing failures derive from Error so callers can map them to a
 * single exit path.  Each subtype carries the datum named in its message. */
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* Malformed formula text.  `offset` is the byte position of the offending
 * token in the input string. */
struct SyntaxError : Error {
  SyntaxError(std::size_t offset, const std::string& what)
      : Error("syntax error at byte " + std::to_string(offset) + ": " + what),
        offset(offset) {}
  std::size_t offset;
};

/* An atom that is not declared in the alphabet in use. */
struct UnknownProposition : Error {
  explicit UnknownProposition(const std::string& name, std::size_t offset = 0)
      : Error("unknown proposition '" + name + "'"), name(name), offset(offset) {}
  std::string name;
  std::size_t offset;
};

/* Automaton construction exceeded the configured state budget. */
struct CapacityExceeded : Error {
  explicit CapacityExceeded(std::size_t limit)
      : Error("automaton construction exceeded " + std::to_string(limit) + " states"),
        limit(limit) {}
  std::size_t limit;
};

/* The formula is outside the reach-avoid fragment.  `subformula` is the
 * printed form of the first offending subterm. */
struct UnsupportedFragment : Error {
  UnsupportedFragment(const std::string& subformula, const std::string& why)
      : Error("unsupported fragment: '" + subformula + "' (" + why + ")"),
        subformula(subformula) {}
  std::string subformula;
};

/* Array arguments whose lengths must agree did not. */
struct LengthMismatch : Error {
  using Error::Error;
};

/* A probability ratio that must be positive was not. */
struct NonPositiveRatio : Error {
  using Error::Error;
};

/* A gradient became non-finite; carries a short diagnostic dump. */
struct NanGradient : Error {
  using Error::Error;
};

/* Linear system used by exact evaluation is singular. */
struct SingularSystem : Error {
  using Error::Error;
};

/* Constrained instance admits no feasible policy. */
struct NoFeasiblePolicy : Error {
  using Error::Error;
};

/* Bad or unknown configuration field.  Message names the field path. */
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace ltlrl
