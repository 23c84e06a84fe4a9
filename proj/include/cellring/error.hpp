#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace cellring {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter or input value lies outside the documented domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A map evaluation produced a concentration outside the open unit interval.
class RangeEscape : public Error {
public:
    static constexpr std::size_t no_step = std::numeric_limits<std::size_t>::max();

    RangeEscape(std::size_t component, double value, std::size_t step = no_step);

    std::size_t component() const noexcept { return component_; }
    double value() const noexcept { return value_; }
    /// Index of the step that produced the escaping state, or no_step when unknown.
    std::size_t step() const noexcept { return step_; }

    RangeEscape at_step(std::size_t step) const { return RangeEscape(component_, value_, step); }

private:
    std::size_t component_;
    double value_;
    std::size_t step_;
};

/// Iterative solver or eigensolver failed to converge.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

class NotConverged : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

class SingularJacobian : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

/// Fixed-point search ended on (or left through) the boundary of the unit cube.
class BoundaryEscape : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

/// A Jacobian entry is undefined at a boundary equilibrium.
class SingularEntry : public DomainError {
public:
    using DomainError::DomainError;
};

/// Normalization of a series whose maximum equals its minimum.
class DegenerateRange : public DomainError {
public:
    using DomainError::DomainError;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace cellring
