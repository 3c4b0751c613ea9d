#pragma once

#include <stdexcept>
#include <string>

namespace evr {

// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument to an operation (out-of-range mass, empty focal set, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Two values built over different frames were mixed.
class FrameMismatch : public Error {
 public:
  FrameMismatch() : Error("mass functions are defined over different frames") {}
  using Error::Error;
};

// Dempster combination of two fully contradictory mass functions.
class TotalConflict : public Error {
 public:
  explicit TotalConflict(double conflict)
      : Error("evidence fully contradictory (conflict K = " + std::to_string(conflict) + ")"),
        conflict_(conflict) {}

  double conflict() const noexcept { return conflict_; }

 private:
  double conflict_;
};

// Fixture or configuration rejected by schema validation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace evr
