#pragma once

#include <stdexcept>

namespace ftn {

/// Base class for all library failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad shapes, non-finite entries, unparsable files.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition does not hold: pole on the integration path,
/// spectral radius outside the stable disk, singular pencil, log branch cut.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An internal numerical process failed to meet its accuracy contract.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ftn
