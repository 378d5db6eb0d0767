#pragma once

#include <stdexcept>
#include <string>

namespace cfpulse {

/// Bad parameter values or malformed configuration (CLI exit code 2).
class config_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Runtime numerical failures (CLI exit code 1).
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Frequency-domain evaluation requested too close to a pole.
class pole_proximity_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

/// Adaptive integrator step size underflowed.
class stiffness_error : public numerical_error {
public:
    stiffness_error(const std::string& what, double t_fail)
        : numerical_error(what), t(t_fail) {}
    double t;
};

/// Fixed-step transient produced NaN/overflow.
class instability_error : public numerical_error {
public:
    instability_error(const std::string& what, double t_fail)
        : numerical_error(what), t(t_fail) {}
    double t;
};

/// Root finder failed to converge; carries partial results upstream.
class rootfind_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

} // namespace cfpulse
