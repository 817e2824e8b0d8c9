#pragma once

#include <stdexcept>
#include <string>

namespace titch {

// Malformed input file or expression. CLI exit code 2.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A theorem hypothesis does not hold for the given instance. CLI exit code 3.
struct HypothesisViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The engine contradicted one of the theorems it implements. Must never
// happen on valid inputs; the fuzzer treats any occurrence as a
// falsification alarm. CLI exit code 4.
struct TheoremViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace titch
