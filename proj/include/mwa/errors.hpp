#pragma once

#include <stdexcept>
#include <string>

namespace mwa {

// Base of every error raised by the library. The CLI maps the subclasses
// onto exit codes (see tools/mwa.cpp).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical or physical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Root bracket without a sign change.
class BracketError : public Error {
public:
    using Error::Error;
};

// Iteration or subdivision budget exhausted. Carries the best estimate
// reached so that callers may still inspect it.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double best_estimate)
        : Error(what), best_estimate_(best_estimate) {}

    double best_estimate() const noexcept { return best_estimate_; }

private:
    double best_estimate_;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

// Pointwise evaluation at an integrable singularity.
class SingularPointError : public DomainError {
public:
    using DomainError::DomainError;
};

// Problems with measured input data.
class DataError : public Error {
public:
    using Error::Error;
};

// Measurements that cannot constrain the requested parameters.
class DegenerateDataError : public DataError {
public:
    using DataError::DataError;
};

class ParseError : public DataError {
public:
    ParseError(const std::string& what, std::size_t line)
        : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace mwa
