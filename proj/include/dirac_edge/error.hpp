#pragma once

#include <stdexcept>
#include <string>

namespace dirac_edge {

/// Base class for every error raised by the library. Numerical-contract
/// violations map to CLI exit status 3, configuration errors to 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class InvalidWall : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateGradient : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ProjectionFailed : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConsistencyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class GridResolutionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class WindowError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BoundaryContamination : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class GridMismatch : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace dirac_edge
