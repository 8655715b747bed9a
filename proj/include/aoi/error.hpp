#pragma once

#include <stdexcept>
#include <string>

namespace aoi {

/// Argument outside the domain of an operation (negative s, bad shape, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Parameters violate rho < 1 or rho11 < 1.
class StabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical procedure did not reach its tolerance. Carries the best
/// estimate it had and the residual that exceeded the tolerance.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double estimate, double residual)
        : std::runtime_error(what + " (estimate " + std::to_string(estimate) + ", residual " +
                             std::to_string(residual) + ")"),
          estimate_(estimate),
          residual_(residual) {}

    double estimate() const noexcept { return estimate_; }
    double residual() const noexcept { return residual_; }

private:
    double estimate_;
    double residual_;
};

/// A metric that cannot be computed from the data at hand (e.g. no deliveries).
class UndefinedMetricError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration or sweep specification.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace aoi
