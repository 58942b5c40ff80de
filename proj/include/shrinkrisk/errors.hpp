#pragma once

#include <stdexcept>
#include <string>

namespace shrinkrisk {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A user-supplied value violates a documented precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A vector length disagrees with the problem dimension p.
class InvalidDimension : public Error {
 public:
  using Error::Error;
};

// The requested operation needs tau^2 but the problem marks it unknown.
class MissingHyperparameter : public Error {
 public:
  using Error::Error;
};

// A shrinkage denominator (a squared norm) is exactly zero.
class DivisionByZero : public Error {
 public:
  using Error::Error;
};

// An iterative numeric routine could not reach the requested accuracy.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

// A computed value escaped a closed-form bound that must hold mathematically.
// This signals a numerical defect in the library, not bad input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace shrinkrisk
