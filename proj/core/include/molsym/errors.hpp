#pragma once

#include <stdexcept>
#include <string>

namespace molsym {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input shape does not match the molecule's species structure.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Two or more nuclei (numerically) coincide; Coulomb terms diverge.
class DegenerateConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Analytic equilibrium does not exist for the given coefficients.
class NoSolutionError : public Error {
 public:
  using Error::Error;
};

/// Operation called in the wrong unit mode.
class UnitError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented precondition (e.g. configuration not centered).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Two candidate matches within tolerance; refusing to guess.
class AmbiguityError : public Error {
 public:
  using Error::Error;
};

/// Gradient is not small enough for a stationary-point-only operation.
class NotStationaryError : public Error {
 public:
  using Error::Error;
};

/// Requested molecule type, group, or decomposition is outside the catalog.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; message carries location context where available.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace molsym
