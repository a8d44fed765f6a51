#pragma once

#include <stdexcept>
#include <string>

namespace momentbody {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: unparsable literals, size mismatches, bad parameters.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Mathematical domain violations: a non-interior moment vector where an
// interior one is required, nonpositive off-diagonals, infeasible duals.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Exact and float scalars mixed in one expression.
class ModeMismatch : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature exhausted its refinement budget. Carries the last
// two estimates so the caller can judge how far apart they were.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double last, double previous)
      : Error(what), last_estimate(last), previous_estimate(previous) {}
  double last_estimate;
  double previous_estimate;
};

// An iterative solver ran out of iterations.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// A constructed measure failed its moment-match postcondition.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

}  // namespace momentbody
