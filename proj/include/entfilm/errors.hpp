#pragma once

#include <stdexcept>
#include <string>

namespace entfilm {

// Argument outside the domain of a formula (negative frequency, negative time, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A denominator vanished. For the layer coefficients `kappa` holds the
// transverse wavenumber at which it happened (negative when not applicable).
class PoleError : public std::runtime_error {
public:
    explicit PoleError(const std::string& what, double kappa = -1.0)
        : std::runtime_error(what), kappa_(kappa) {}
    double kappa() const noexcept { return kappa_; }

private:
    double kappa_;
};

class NotFoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double error_estimate)
        : std::runtime_error(what), error_estimate_(error_estimate) {}
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double error_estimate_;
};

// |gamma_c| > gamma_s: the collective decay matrix is not positive, which in
// practice means the quadrature went wrong.
class PhysicalityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidStateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace entfilm
