#pragma once

#include <stdexcept>
#include <string>

namespace gwco {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Binary series operation with operands of different truncation order.
class OrderMismatchError : public Error {
public:
    using Error::Error;
};

/// Differentiation past the truncation order.
class DegreeUnderflowError : public Error {
public:
    using Error::Error;
};

/// Series division whose denominator constant term is below the stability threshold.
class DivisionByZeroError : public Error {
public:
    using Error::Error;
};

/// NaN or infinity in a numeric input.
class NonFiniteError : public Error {
public:
    using Error::Error;
};

/// Weight sequence violating beta(0)=1, positivity, or the growth floor.
class InvalidWeightsError : public Error {
public:
    using Error::Error;
};

/// Kernel evaluation point outside the open unit disc.
class OutOfDiscError : public Error {
public:
    using Error::Error;
};

/// Mixing elements of different spaces (weights or order differ).
class SpaceMismatchError : public Error {
public:
    using Error::Error;
};

/// Composition symbol with |phi(0)| > 1, violating the self-map hypothesis.
class SelfMapError : public Error {
public:
    using Error::Error;
};

/// Normality margin outside [0, N).
class InvalidMarginError : public Error {
public:
    using Error::Error;
};

/// Operation requested outside its supported derivative-order range.
class UnsupportedOrderError : public Error {
public:
    using Error::Error;
};

/// Weight combination that makes a closed-form constant degenerate.
class DegenerateWeightsError : public Error {
public:
    using Error::Error;
};

/// Invalid experiment configuration (CLI flags or config file).
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace gwco
