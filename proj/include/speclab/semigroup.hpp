#pragma once
#include <cstdint>
#include <utility>
#include <vector>

#include "speclab/kernel.hpp"

namespace speclab {

// e^{-tH} by spectral synthesis: K = sum_m e^{-t lambda_m} u_m u_m^T.
KernelMatrix heat_kernel_eigen(const SpectralDecomposition& sd, double t);

// d/dx along rows: central differences inside, one-sided at the edge rows.
KernelMatrix heat_kernel_gradient(const KernelMatrix& k);

// Crank-Nicolson propagation of delta columns, damped start (the first step
// is split into two implicit-Euler half steps so the delta data cannot ring).
// Internal cross-check route; Dirichlet only.
KernelMatrix heat_kernel_crank_nicolson(const OperatorMatrix& op, double t,
                                        std::size_t n_steps);

struct FeynmanKacEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

// Pinned-bridge Monte Carlo for e^{-tH}(x,y): the free Gaussian factor times
// the bridge average of exp(-int_0^t V). The bridge variance matches the
// generator -d^2/dx^2 (increment variance 2 dt). Deterministic per seed;
// path p draws from the splitmix-derived substream of seed and p.
FeynmanKacEstimate heat_kernel_feynman_kac(const PotentialSpec& pot, double t,
                                           double x, double y, std::size_t n_paths,
                                           std::size_t n_steps, std::uint64_t seed);

// Free heat kernel (4 pi t)^{-1/2} exp(-r^2/(4t)) — the exact target the
// discrete kernels approximate.
double free_heat_kernel(double t, double r);

struct GaussianBoundFit {
    double log_cn = 0.0;
    double c = 0.0;
    int alpha = 0;
    bool holds = false;
    double residual = 0.0;      // max log-violation above the fitted law
    double slice_spread = 0.0;  // spread of per-time intercepts (log units)
    double noise_floor = 0.0;   // cleanest per-slice fit residual (rms, log units)
    std::vector<std::pair<double, double>> slice_intercepts; // (t, intercept)
};

// Least-squares fit of log|K| <= log c_n - ((dim+alpha)/2) log t - c r^2/t over
// samples with |K| > 1e-14 and r^2/t <= u_cap. A time-uniform bound requires
// consistent per-time intercepts, so holds = (c > 0) and intercept spread
// <= max(10 * noise floor, log 2); violations below that margin are treated as
// discretization noise rather than a genuine counterexample. Throws
// insufficient_range_error("degenerate...") when no samples pass the floor.
GaussianBoundFit fit_gaussian_bound(
    const std::vector<std::pair<double, KernelMatrix>>& kernels, int alpha,
    int dim = 1, double u_cap = 32.0);

struct SemigroupMoments {
    double m2 = 0.0;    // max_y h sum_x K(x,y)^2
    double m_exp = 0.0; // max_y h sum_x |K(x,y)| e^{s|x-y|}
};

// Exponential sums run in log space so large s t stays finite.
SemigroupMoments semigroup_moments(const KernelMatrix& k, double s);

} // namespace speclab
