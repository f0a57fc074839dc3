#pragma once

#include <stdexcept>
#include <string>

namespace logitmeta {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (bad index, alphabet mismatch,
// dimension mismatch, malformed config).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A state space or dense operator would exceed its configured size cap.
class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

// A linear solve hit a pivot below the singularity threshold.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

// Absorption into the target set is not almost sure from the start state.
class NotAbsorbing : public Error {
 public:
  using Error::Error;
};

}  // namespace logitmeta
