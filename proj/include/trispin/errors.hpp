#pragma once

#include <stdexcept>
#include <string>

namespace trispin {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A site or quantum-number pair outside the triangle i + j <= N.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Parameters outside the supported range (e.g. a nonpositive p_k).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// p1*p4 == p2*p3: the field formula and the weights are singular.
class DegeneracyError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

/// Requested matrix is too large for the dense routine.
class SizeError : public Error {
public:
  using Error::Error;
};

/// Operation requires p1 == p4, p2 == p3 (and possibly the PST root).
class RestrictionError : public Error {
public:
  using Error::Error;
};

/// Input has too few elements to be meaningful.
class DegenerateInputError : public Error {
public:
  using Error::Error;
};

/// A quantity cannot be resolved in the available arithmetic precision.
class PrecisionError : public Error {
public:
  using Error::Error;
};

}  // namespace trispin
