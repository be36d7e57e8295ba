#pragma once

#include <stdexcept>
#include <string>

namespace fermag {

/// Malformed state document or experiment configuration.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A request refused before allocation because it exceeds a runtime guard.
class GuardRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed object failed one of its numerical invariants.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fermag
