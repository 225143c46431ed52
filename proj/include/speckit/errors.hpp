#pragma once

#include <stdexcept>
#include <string>

namespace speckit {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

/// Grids or vector lengths of two operands do not match.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A numeric computation broke down (non-finite values, no convergence).
class NumericError : public Error {
public:
    using Error::Error;
};

/// Envelope condition (norm_A*eta/sqrt(g) < 3*sqrt(3)/4) violated.
class NoMinimumError : public NumericError {
public:
    using NumericError::NumericError;
};

/// The error curve lies below the envelope's data term; the contact
/// system has no solution for any g > 0.
class InfeasibleContactError : public NumericError {
public:
    using NumericError::NumericError;
};

/// No g in the scan grid dominates the curve family.
class NoContactError : public NumericError {
public:
    using NumericError::NumericError;
};

/// An iterate left the tabulated alpha range and stayed pinned there.
class CurveRangeError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Configuration file could not be parsed or failed validation.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace speckit
