#pragma once
#include <stdexcept>
#include <string>

namespace speclab {

// Grid construction rejected (empty range, too few nodes).
struct invalid_range_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// LAPACK / Eigen backend did not converge.
struct eigensolver_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Spectrum reaches outside the window a periodized Fourier expansion of the
// semigroup symbol can represent.
struct spectral_range_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Sampled function is not compactly supported inside its interval.
struct support_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Radial envelope spans too few bins to fit a decay order, or a fit was
// handed a degenerate sample set.
struct insufficient_range_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive quadrature stalled above the requested tolerance.
struct quadrature_error : std::runtime_error {
    double achieved = 0.0;
    quadrature_error(const std::string& msg, double achieved_tol)
        : std::runtime_error(msg), achieved(achieved_tol) {}
};

// Experiment configuration malformed or inconsistent.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace speclab
