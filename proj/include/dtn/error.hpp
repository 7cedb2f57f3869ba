#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dtn {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value violates a model invariant (dangling id, lo > hi, ...).
class ModelError : public Error {
public:
    using Error::Error;
};

/// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Weight arithmetic left the 64-bit range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// An exhaustive procedure would exceed its configured work budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its contract.
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace dtn
