#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace supercon {

/// Base for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Kernel/order combination the operation does not implement.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// The convolution root would leave the pointwise-defined Matérn family.
class NoRootError : public Error {
public:
    using Error::Error;
};

/// Cholesky pivot fell below the conditioning floor.
class ConditioningError : public Error {
public:
    ConditioningError(std::size_t pivot_index, double pivot, const std::string& what)
        : Error(what), pivot_index_(pivot_index), pivot_(pivot) {}

    std::size_t pivot_index() const noexcept { return pivot_index_; }
    double pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_index_;
    double pivot_;
};

/// Adaptive quadrature failed to reach its tolerance.
class AccuracyError : public Error {
public:
    using Error::Error;
};

/// A requested Mercer mode has a non-positive eigenvalue.
class TruncationError : public Error {
public:
    using Error::Error;
};

/// Supplied native norm is smaller than the interpolant's norm.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

/// Fewer than two usable (h, e) pairs for a rate fit.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

}  // namespace supercon
