#pragma once

#include <stdexcept>
#include <string>

namespace qfmod {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A ring element expected to be invertible is divisible by p.
class NotAUnit : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The unit has Legendre symbol -1 and therefore no square root.
class NonResidue : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The element is not a square in Z/2^k.
class NotASquare : public DomainError {
 public:
  using DomainError::DomainError;
};

/// det Q = 0 where a non-degenerate form is required.
class SingularForm : public DomainError {
 public:
  using DomainError::DomainError;
};

/// t = 0 where a non-zero target is required.
class ZeroTarget : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A Las Vegas step exhausted its retry cap. Never indicates a wrong answer.
class LasVegasFailure : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration would exceed the configured vector budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Too few observations for the chi-square approximation.
class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

}  // namespace qfmod
