#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace svfix {

/// Base class for every error the library reports.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A documented precondition was violated by the caller.
class ContractViolation : public Error {
public:
    explicit ContractViolation(const std::string& what) : Error(what) {}
};

/// Vector dimensions of the arguments do not match.
class DimensionError : public ContractViolation {
public:
    explicit DimensionError(const std::string& what) : ContractViolation(what) {}
};

/// An operation that requires a nonempty point set received an empty one.
class EmptySetError : public Error {
public:
    explicit EmptySetError(const std::string& what) : Error(what) {}
};

/// Expression text could not be parsed. Carries 1-based line/column.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int col)
        : Error(what + " (line " + std::to_string(line) + ", col " + std::to_string(col) + ")"),
          line(line), col(col) {}
    int line;
    int col;
};

/// Expression evaluation hit a domain error (sqrt of a negative number,
/// division by zero, NaN-producing power). Carries the offending subexpression.
class EvalError : public Error {
public:
    EvalError(const std::string& what, std::string subexpr)
        : Error(what + " in '" + subexpr + "'"), subexpr(std::move(subexpr)) {}
    std::string subexpr;
};

/// Configuration file failed to load or validate. Carries every issue found.
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, std::vector<std::string> issues)
        : Error(what), issues(std::move(issues)) {}
    std::vector<std::string> issues;
};

}  // namespace svfix
