#pragma once

#include <stdexcept>
#include <string>

namespace shufflemix {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of an operation (bad permutation text, n = 1
// for cyclic descents, k < n for a bound that needs k >= n, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed request: missing or mistyped field, unknown command.
class UsageError : public Error {
 public:
  using Error::Error;
};

// A computation would exceed a configured enumeration or word budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// An internal invariant broke, e.g. a mass formula produced a negative value.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace shufflemix
