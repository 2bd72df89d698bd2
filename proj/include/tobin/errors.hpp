#pragma once

#include <stdexcept>
#include <string>

namespace tobin {

/// Base of every error raised by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain (p <= 0, t < 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Non-finite or otherwise malformed numeric input.
class InputError : public Error {
public:
    using Error::Error;
};

/// A call violated a documented precondition (mismatched grids, non-equilibrium base point).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Iterative method failed (no root, no convergence, truncated trajectory).
class NumericalError : public Error {
public:
    using Error::Error;
};

class NoPositiveRootError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace tobin
