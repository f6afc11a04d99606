#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace lhm {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameter object violates an invariant (non-finite, negative, missing channel).
class InvalidParams : public Error {
public:
    using Error::Error;
};

/// The steady-state linear system is singular: no unique stationary state.
class DegenerateSteadyState : public Error {
public:
    using Error::Error;
};

/// Fixed-step integration drifted off the trace-one manifold.
class IntegrationError : public Error {
public:
    using Error::Error;
};

/// Clausius-Mossotti denominator vanished.
class PoleError : public Error {
public:
    PoleError(const std::string& what, std::complex<double> n_gamma)
        : Error(what), n_gamma_(n_gamma) {}

    /// The offending product N*gamma.
    std::complex<double> n_gamma() const { return n_gamma_; }

private:
    std::complex<double> n_gamma_;
};

/// Malformed or inconsistent user input (config text, CSV, grid).
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace lhm
