#pragma once

#include <stdexcept>
#include <string>

namespace lodim {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands or arguments violate an operation's precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Malformed DIMACS / JSON input. Carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// An exact solver was asked to run beyond its configured size limits.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// The requested object provably does not exist (e.g. field too small for a
/// Vandermonde family, retry budget exhausted).
class Infeasible : public Error {
public:
    using Error::Error;
};

} // namespace lodim
