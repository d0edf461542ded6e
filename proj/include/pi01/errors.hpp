#pragma once

#include <stdexcept>
#include <string>

namespace pi01 {

// Input outside the mathematical domain of an operation (ln of a
// nonpositive number, a divisor interval containing zero, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Argument lies beyond a table or sieve bound.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A configured cap was exceeded (precision, exact-value size, memory).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed file or text input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pi01
