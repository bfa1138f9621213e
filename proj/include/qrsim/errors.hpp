#pragma once

#include <stdexcept>
#include <string>

namespace qrsim {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

// Numerical accuracy target missed; `achieved` carries the offending quantity
// (tail mass, quadrature error bound, ...).
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double achieved, double bound = 0.0)
        : Error(what), achieved_(achieved), bound_(bound) {}
    double achieved() const noexcept { return achieved_; }
    double bound() const noexcept { return bound_; }

private:
    double achieved_;
    double bound_;
};

class NoSteadyState : public Error {
public:
    using Error::Error;
};

class InconsistentInput : public Error {
public:
    using Error::Error;
};

class InvariantViolation : public Error {
public:
    using Error::Error;
};

} // namespace qrsim
