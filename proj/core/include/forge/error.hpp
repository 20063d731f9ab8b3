#pragma once

#include <stdexcept>
#include <string>

namespace forge {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation hit a point outside the domain of an expression
/// (division by zero, ln of a nonpositive value, non-finite result).
class DomainError : public Error {
public:
    DomainError(std::string what, std::string subexpression);

    const std::string& subexpression() const noexcept { return subexpression_; }

private:
    std::string subexpression_;
};

/// An operation was called with arguments that violate its precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A DSL script failed to parse or resolve.
class ParseError : public Error {
public:
    ParseError(std::string message, int line, int column);

    const std::string& message() const noexcept { return message_; }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    std::string message_;
    int line_;
    int column_;
};

} // namespace forge
