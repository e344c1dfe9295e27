#pragma once

#include <stdexcept>
#include <string>

namespace ghostlab {

// Invalid growth exponents, regularization parameters, or configuration values.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Evaluation point outside the unit square.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Derivative requested at z = 0 for a family that is not smooth there (mu = 0).
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Hessian not positive definite, or a quotient with vanishing denominator.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Grid resolution or lattice offset out of range.
class SizeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Claim DAG construction or synthesis error (duplicate id, cycle, bad mapping).
class DagError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (field CSV, DAG file).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ghostlab
