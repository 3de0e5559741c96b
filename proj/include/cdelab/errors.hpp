#pragma once

#include <stdexcept>
#include <string>

namespace cdelab {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied data that violates a documented precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An iterative method failed to deliver a result.
class SolverError : public Error {
 public:
  using Error::Error;
};

class NonConjugatePair : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class TruncationMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class EmptyTrajectory : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NoEllipticPair : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class GridCoverage : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class DegenerateProfile : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class ConvergenceFailure : public SolverError {
 public:
  using SolverError::SolverError;
};

class NewtonDivergence : public SolverError {
 public:
  using SolverError::SolverError;
};

class NonFiniteState : public SolverError {
 public:
  using SolverError::SolverError;
};

class SolverStall : public SolverError {
 public:
  using SolverError::SolverError;
};

class ConvergedToEquilibrium : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace cdelab
