#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xtrid {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands live over different fields or have mismatched shapes.
class IncompatibleOperands : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// A constructor family cannot be realized over the requested field.
class UnusableField : public Error {
 public:
  using Error::Error;
};

class NotMultiplicityFree : public Error {
 public:
  using Error::Error;
};

// The claimed eigenvalues do not annihilate the matrix.
class WrongSpectrum : public Error {
 public:
  using Error::Error;
};

// The system {S A = A^T S, S A* = A*^T S} does not have a one dimensional
// solution space with an invertible member.
class AntiautomorphismNotUnique : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class NotLeonardSystem : public Error {
 public:
  using Error::Error;
};

// A quantity that must agree across all admissible indices did not.
class InconsistentParameters : public Error {
 public:
  using Error::Error;
};

// A proven identity failed to hold. Indicates corrupted input or a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class CostGuard : public Error {
 public:
  using Error::Error;
};

class ResumeError : public Error {
 public:
  using Error::Error;
};

}  // namespace xtrid
