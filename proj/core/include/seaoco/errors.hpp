#pragma once

#include <stdexcept>
#include <string>

namespace seaoco {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonFiniteInput : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A proximal step with zero weight and a nonzero linear term has no minimizer.
class UnboundedObjective : public Error {
 public:
  using Error::Error;
};

class NumericalOverflow : public Error {
 public:
  using Error::Error;
};

/// Rounds were queried out of order.
class ProtocolViolation : public Error {
 public:
  using Error::Error;
};

/// An extra sample from the previous round's law was requested at t = 1.
class NoPreviousDistribution : public Error {
 public:
  using Error::Error;
};

class InvalidLowerBoundDomain : public Error {
 public:
  using Error::Error;
};

class SolverDivergence : public Error {
 public:
  using Error::Error;
};

class ConversionPreconditionViolated : public Error {
 public:
  using Error::Error;
};

class ComparatorSolveFailure : public Error {
 public:
  using Error::Error;
};

class InfeasibleComparator : public Error {
 public:
  using Error::Error;
};

class UnknownTheorem : public Error {
 public:
  using Error::Error;
};

}  // namespace seaoco
