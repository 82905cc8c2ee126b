#pragma once

#include <stdexcept>
#include <string>

namespace jetdiff {

// Raised for mathematically invalid input: singular Jacobians, poles,
// chart breakdowns, zero leading coefficients.
class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised for malformed or out-of-range requests (bad ranks, unsupported
// parameter ranges, mismatched orders).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A consistency check failed. Never valid output; always a bug.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ParseError : public UsageError {
public:
    ParseError(const std::string& message, int line, int column)
        : UsageError(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace jetdiff
