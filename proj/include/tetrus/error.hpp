#pragma once

#include <stdexcept>
#include <string>

namespace tetrus {

// Base class for every failure raised by the library. The message names the
// violated invariant or precondition so that callers can surface it verbatim.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller handed in data that violates a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An internal consistency check of a computed object failed.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// A subgroup graph query needed finite index but the graph is incomplete.
class InfiniteIndex : public Error {
 public:
  InfiniteIndex() : Error("infinite index") {}
};

}  // namespace tetrus
