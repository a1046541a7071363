#pragma once

#include <stdexcept>
#include <string>

namespace subideal {

// Bad input: malformed text, dimension mismatch, violated preconditions.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine failed (SVD non-convergence, degenerate basis, ...).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal guard tripped; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace subideal
