#pragma once

#include <stdexcept>
#include <string>

namespace prqi {

/// Invalid argument in the mathematical sense: zero vector, bad parameter range,
/// indefinite mass matrix.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operands of incompatible sizes.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The Jacobi eigendecomposition oracle did not converge.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Too few usable trace entries to fit a convergence order.
class NotEstimable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed Matrix Market, vector or key-value input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace prqi
