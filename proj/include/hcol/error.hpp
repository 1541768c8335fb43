#pragma once

#include <stdexcept>
#include <string>

namespace hcol {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the caller's input does not hold.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A configured size ceiling would be exceeded by an exponential search.
class CeilingExceeded : public Error {
public:
    using Error::Error;
};

/// A seeded sample-and-verify loop ran out of retries, or a field is too small.
class Infeasible : public Error {
public:
    using Error::Error;
};

/// An internal invariant failed; always a bug.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

inline void require(bool cond, const std::string& what)
{
    if (!cond)
        throw InvalidArgument(what);
}

inline void check_ceiling(std::size_t value, std::size_t ceiling, const std::string& what)
{
    if (value > ceiling)
        throw CeilingExceeded(what + ": " + std::to_string(value) + " exceeds ceiling " + std::to_string(ceiling));
}

} // namespace hcol
