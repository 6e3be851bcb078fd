#pragma once

#include <stdexcept>
#include <string>

namespace kigen {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A precondition on an argument was violated.
class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& what) : Error(what) {}
};

/// A computation would exceed a configured resource limit (e.g. a term cap).
class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& what) : Error(what) {}
};

/// Division by zero (or inversion of zero) in an exact ring.
class DivisionByZeroError : public Error {
public:
    explicit DivisionByZeroError(const std::string& what) : Error(what) {}
};

} // namespace kigen
