#pragma once

#include <stdexcept>
#include <string>

namespace pvfreq {

/// Bad input: a configuration value violates its constraint, or a document
/// cannot be parsed. Maps to CLI exit status 1.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Document syntax error with the byte offset where parsing failed.
class SyntaxError : public ValidationError {
public:
    SyntaxError(const std::string& what, std::size_t position)
        : ValidationError(what), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Failure while running an analysis on valid input. Maps to exit status 2.
class RuntimeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Step response whose final change is too small to grade.
class NoResponseError : public RuntimeError {
public:
    using RuntimeError::RuntimeError;
};

/// Step response still moving over the final 10% of the horizon.
class NotSettledError : public RuntimeError {
public:
    using RuntimeError::RuntimeError;
};

/// Headroom target cannot be met within [0, h_max].
class UnattainableError : public RuntimeError {
public:
    using RuntimeError::RuntimeError;
};

/// Nadir is not monotone in headroom, so bisection is not meaningful.
class NonMonotoneError : public RuntimeError {
public:
    using RuntimeError::RuntimeError;
};

} // namespace pvfreq
