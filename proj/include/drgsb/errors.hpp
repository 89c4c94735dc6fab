// errors.hpp — exception types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace drgsb {

// Requested configuration is outside what the implementation supports
// (e.g. a memory kernel for a non-exponential cutoff).
struct UnsupportedConfigError : std::runtime_error {
    explicit UnsupportedConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Flow right-hand side hit the resonant degeneracy D = 0 (Lambda = Delta with
// gamma*Lambda = 0); a smaller step or a nonzero gamma seed is required.
struct SingularFlowError : std::runtime_error {
    explicit SingularFlowError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative numerical procedure failed to converge (step underflow,
// quadrature stagnation, fit divergence diagnostics are in the message).
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Nonlinear fit did not converge; message carries residual diagnostics.
struct FitError : std::runtime_error {
    explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

// A requested feature of the data is absent (e.g. no fixed-point crossing
// within the integrated range).
struct NotFoundError : std::runtime_error {
    explicit NotFoundError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace drgsb
