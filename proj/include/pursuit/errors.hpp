#pragma once

#include <stdexcept>

namespace pursuit {

// Malformed input file or argument (CLI exit code 2).
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A state/node budget would be exceeded (CLI exit code 3).
class BudgetExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// An internal invariant was violated at runtime (CLI exit code 4).
class InvariantError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

} // namespace pursuit
