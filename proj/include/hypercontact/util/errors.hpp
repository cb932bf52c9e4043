#pragma once

#include <stdexcept>
#include <string>

namespace hypercontact {

/// Input outside the mathematical domain of an operation (non-positive base, etc).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A documented precondition of an operation does not hold for the given arguments.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A polynomial product or integral would exceed the configured degree cap.
class DegreeOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A native-float evaluation left the representable range (the point is escaping).
class RangeOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace hypercontact
