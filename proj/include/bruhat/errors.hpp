// errors.hpp
// Exception types shared by the library and the CLI.
#pragma once

#include <stdexcept>
#include <string>

namespace bruhat {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: bad matrix, unknown generator name, bad word syntax.
struct InvalidInput : Error {
  using Error::Error;
};

// Braid-closure exploration ran past its node budget.
struct BudgetExceeded : Error {
  using Error::Error;
};

// An element needed by the computation lies outside the ball.
struct BallTooSmall : Error {
  using Error::Error;
};

struct EmptyInterval : Error {
  using Error::Error;
};

struct UnresolvedCoatom : Error {
  using Error::Error;
};

struct ScenarioNotCovered : Error {
  using Error::Error;
};

// A mathematical fact the code relies on failed to hold. Always a bug.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace bruhat
