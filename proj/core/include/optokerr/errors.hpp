#pragma once

#include <stdexcept>
#include <string>

namespace optokerr {

// Bad argument: negative frequency, non-positive step, empty bath...
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A quadrature, refinement loop or inversion did not reach its tolerance.
// Carries the best value we had, its error estimate and the target.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double estimate, double error, double tolerance)
        : std::runtime_error(what), estimate_(estimate), error_(error), tolerance_(tolerance) {}

    double estimate() const noexcept { return estimate_; }
    double error() const noexcept { return error_; }
    double tolerance() const noexcept { return tolerance_; }

private:
    double estimate_;
    double error_;
    double tolerance_;
};

// The grid-halving probe on eta moved by more than the configured fraction.
class GridTooCoarseError : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

// |G| blew through the configured bound; almost always a kernel sign or
// convention mistake rather than physics.
class InstabilityError : public std::runtime_error {
public:
    InstabilityError(const std::string& what, double time, double value)
        : std::runtime_error(what), time_(time), value_(value) {}

    double time() const noexcept { return time_; }
    double value() const noexcept { return value_; }

private:
    double time_;
    double value_;
};

}  // namespace optokerr
