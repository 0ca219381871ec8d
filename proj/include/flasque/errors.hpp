#pragma once

#include <stdexcept>
#include <string>

namespace flasque {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad dimensions, non-bijective permutations, parse failures.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition does not hold (non-equivariant map, non-surjective
/// presentation, unstable sublattice, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap was exceeded.
class SizeLimitError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Two computations that must agree did not. Always a bug.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace flasque
