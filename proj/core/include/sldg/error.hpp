#pragma once

#include <stdexcept>
#include <string>

namespace sldg {

// Bad input: malformed config, invalid mesh, unknown case. CLI exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A step could not be completed. CLI exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CharacteristicCrossingError : NumericalError {
  using NumericalError::NumericalError;
};

struct GeometryError : NumericalError {
  using NumericalError::NumericalError;
};

struct ConditioningError : NumericalError {
  using NumericalError::NumericalError;
};

struct PoissonIncompatibilityError : NumericalError {
  using NumericalError::NumericalError;
};

struct SolverError : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace sldg
