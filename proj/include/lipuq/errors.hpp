#pragma once

#include <stdexcept>
#include <string>

namespace lipuq {

/// Base class for all lipuq errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input cell or row (CSV syntax, non-numeric field, missing cell).
class ParseError : public Error {
public:
    using Error::Error;
};

/// A coordinate lies outside [0,1] beyond tolerance, or a parameter is out of range.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Two identical design points carry different observed values.
class DuplicateError : public Error {
public:
    using Error::Error;
};

/// Dataset with no rows.
class EmptyError : public Error {
public:
    using Error::Error;
};

/// Unknown synthetic-data generator kind.
class UnsupportedKind : public Error {
public:
    using Error::Error;
};

/// Point length does not match the configured dimension.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Operation defined only for one metric kind (corner bounds need the sup metric).
class UnsupportedMetric : public Error {
public:
    using Error::Error;
};

/// Data too degenerate for the requested quantity (K-hat = 0 where positive required,
/// or fewer samples than a statistic needs).
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// Regularity budget kappa below the empirical Lipschitz constant: no admissible function.
class EmptyClass : public Error {
public:
    using Error::Error;
};

/// Exhaustive corner enumeration would exceed the configured budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

} // namespace lipuq
