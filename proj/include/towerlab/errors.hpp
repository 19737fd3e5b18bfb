#pragma once

#include <stdexcept>
#include <string>

namespace towerlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Iteration cap reached before the requested tolerance; signals a
// tolerance/precision mismatch rather than a transient condition.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace towerlab
