#pragma once

#include <stdexcept>
#include <string>

namespace eisen {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition was violated by the caller.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A quantity cannot be decided at the working precision.
class PrecisionError : public Error {
public:
    using Error::Error;
};

/// Malformed external input (documents, command-line values).
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace eisen
