#pragma once

#include <stdexcept>
#include <string>

namespace sncfano {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two classes living on different surfaces were combined.
class SurfaceMismatch : public Error {
public:
    using Error::Error;
};

/// Input data breaks a documented invariant (non-effective boundary, bad JSON shape, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Parameters of a threefold family violate their admissible range.
class ConstraintError : public Error {
public:
    using Error::Error;
};

/// An operation was called on a fiber it is not defined for.
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace sncfano
