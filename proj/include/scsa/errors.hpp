#pragma once

#include <stdexcept>
#include <string>

namespace scsa {

/// Invalid arguments or violated preconditions (maps to CLI exit code 2).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed input data (CSV rows, grids that do not parse); exit code 2.
class ParseError : public DomainError {
public:
    explicit ParseError(const std::string& what) : DomainError(what) {}
};

/// A required mathematical condition does not hold, e.g. (C5) in the
/// noise-gap analysis; exit code 2.
class ConditionError : public DomainError {
public:
    explicit ConditionError(const std::string& what) : DomainError(what) {}
};

/// Numerical failure (eigensolver non-convergence); exit code 3.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem failure; exit code 4.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace scsa
