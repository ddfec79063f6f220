#pragma once

#include <stdexcept>
#include <string>

namespace cg {

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Input data is structurally malformed (dangling ids, inconsistent records).
class StructuralError : public Error {
public:
    using Error::Error;
};

/// A text input could not be parsed; carries the 1-based offending line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    int line() const { return line_; }

private:
    int line_ = 0;
};

/// A bounded search ran out of budget before reaching a certain answer.
/// This is an explicit "unknown", never a silent wrong result.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// A postcondition that the underlying construction guarantees failed.
/// Seeing this means the implementation has a bug, not the input.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace cg
