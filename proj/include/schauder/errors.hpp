#pragma once

#include <stdexcept>

namespace schauder {

/// An iterative solver stopped without meeting its accuracy contract.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix required to be positive semidefinite has a negative eigenvalue
/// beyond tolerance.
class NotPsdError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input is too large for an exhaustive routine.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace schauder
