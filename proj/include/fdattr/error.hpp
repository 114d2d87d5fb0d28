#pragma once

#include <stdexcept>
#include <string>

namespace fdattr {

/// Raised when an input violates an operation's preconditions.
/// The CLI maps this to exit code 2.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical procedure cannot meet its tolerances
/// (non-finite state, optimizer stall, search exhaustion). Exit code 3.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidInput(what);
}

}  // namespace fdattr
