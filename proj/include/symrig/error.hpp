#pragma once

#include <stdexcept>
#include <string>

namespace symrig {

/// Malformed or inconsistent input (bad shapes, invalid representation, bad JSON fields).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is well formed but outside what the library handles (e.g. non-free actions,
/// combinatorial path on groups other than (Z/2Z)^l).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independent computations that must agree did not.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace symrig
