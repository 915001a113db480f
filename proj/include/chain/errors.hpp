#pragma once

#include <stdexcept>
#include <string>

namespace chain {

// Argument outside the documented domain of an operation.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Evaluation inside a spectral band where a gap-only quantity is undefined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Transfer matrix at a band edge: defective or unimodular double eigenvalue.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Coefficient recursion left the representable range (growing mode).
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class ContinuationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chain
