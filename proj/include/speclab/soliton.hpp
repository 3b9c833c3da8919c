#pragma once
#include <complex>
#include <functional>
#include <vector>

#include "speclab/cutoffs.hpp"
#include "speclab/decay.hpp"

namespace speclab {

// p_nu(tau, ik) = sum_{m,r} coeff[m][r] tau^m (ik)^r, built by the exact
// recursion p_nu = (1 - tau^2) d/dtau p_{nu-1} + (ik - nu tau) p_{nu-1},
// p_0 = 1. Coefficients are integers held exactly in doubles; working
// symbolically here kills the cancellation that a numeric recursion would
// suffer near k = 0.
struct PtPolynomial {
    int nu = 0;
    std::vector<std::vector<double>> coeff; // coeff[m][r], both degrees <= nu

    std::complex<double> eval(double tau, double k) const;      // p(tau, ik)
    std::complex<double> eval_dtau(double tau, double k) const; // d/dtau p
    double leading_tau_coefficient() const; // coeff[nu][0] = (-1)^nu (2nu-1)!!
};

PtPolynomial pt_recursion(int nu);

// Continuum eigenfunction of -d^2/dx^2 - nu(nu+1) sech^2 x at energy k^2:
// e(x,k) = (sign k)^nu (prod_{j=1..nu} 1/(j+i|k|)) P_nu(x,k) e^{ikx} with
// P_nu(x,k) = p_nu(tanh x, ik). The x-derivative is exact:
// d/dx [P e^{ikx}] = [(1-tau^2) dP/dtau + ik P] e^{ikx}.
struct ScatteringState {
    int nu = 0;
    double k = 0.0;
    PtPolynomial poly;
    std::complex<double> prefactor;

    std::complex<double> value(double x) const;
    std::complex<double> derivative(double x) const;
};

// Throws std::invalid_argument at k = 0 (the sign factor is undefined there;
// the product e(x,k) conj(e(y,k)) used by ac_kernel stays analytic through 0).
ScatteringState scattering_state(int nu, double k);

struct BoundState {
    int m = 0;           // energy -m^2
    double energy = 0.0;
    std::function<double(double)> psi; // L^2-normalized, real
};

// Discrete spectrum {-1, -4, ..., -nu^2}, listed ascending in energy
// (deepest first) to match the grid eigendecomposition. Hard-coded
// sech/tanh closed forms, normalized by quadrature at construction.
// Supported for nu in {1, 2, 3}; anything else throws.
struct BoundStateSet {
    int nu = 0;
    std::vector<BoundState> states;
};

BoundStateSet bound_states(int nu);

struct AcKernelOptions {
    double tol = 1e-9;          // convergence target for the k-quadrature
    double k_max = 0.0;         // 0: detect from the support of phi(k^2)
    double scan_lambda_max = 256.0; // support scan ceiling when detecting
    std::size_t max_panels = 8192;  // refinement cap (per half-axis)
};

struct AcValue {
    double value = 0.0;
    double imag_residual = 0.0; // |Im| of the k-integral; conjugate-symmetric
                                // nodes force it to vanish
};

// Kernel of phi(H_nu) restricted to the continuous spectrum:
// K(x,y) = (2pi)^{-1} int phi(k^2) e(x,k) conj(e(y,k)) dk, evaluated through
// the product form prod (j^2+k^2)^{-1} P_nu(x,k) P_nu(y,-k) e^{ik(x-y)}
// (real-analytic in k, no special handling at 0). alpha = 1 differentiates
// in x under the integral, analytically. Adaptive composite Gauss-Legendre
// panels, mirrored across k = 0; initial resolution scales with
// k_max * |x - y| to track the oscillation. Throws quadrature_error (with
// the achieved tolerance) when the panel cap is hit before convergence.
AcValue ac_kernel(int nu, const std::function<double(double)>& phi, double x,
                  double y, int alpha = 0, const AcKernelOptions& opt = {});

struct SolitonSampleOptions {
    double x_halfwidth = 4.0; // first argument sweeps [-w, w]
    double x_step = 0.25;     // the potential profile varies on scale 1
    double u_cap = 60.0;      // scaled radius 2^{j/2} r <= u_cap ...
    double r_floor = 8.0;     // ... but r always reaches at least this far
    double tol = 1e-6;        // per-point quadrature target
    std::size_t max_panels = 8192;
};

// Pointwise |grad^alpha K_j| samples of the depth-nu continuous kernel, in
// the shape decay_sweep consumes. x runs on a slow scale-1 grid; y = x -+ r.
// The r window is fixed in the scaled variable u = 2^{j/2} r (out to u_cap,
// past where the weighted free envelope |W(u)|(1+u)^N has died), which makes
// the free component of the statistic exactly j-uniform by scale invariance;
// a physical floor keeps the potential's exponential tail visible at high j.
// dr = max(0.4 * 2^{-j/2}, 0.0125) tracks the band oscillation, and the band
// edge fixes k_max = 2^{j/2}, skipping the support scan per call.
KernelSamples sample_soliton_kernel(int nu, const DyadicFamily& family, int j,
                                    int alpha,
                                    const SolitonSampleOptions& opt = {});

// Numerical check of the two transforms the partial-fraction bounds rest on:
// (e^{-|x|})^(k) = 2/(1+k^2) and (sign(x) e^{-|x|})^(k) = -2ik/(1+k^2),
// integrated over [-40, 40] against the closed forms on a k-grid in [-8, 8].
struct FourierIdentityReport {
    std::vector<double> k;
    std::vector<std::complex<double>> even_numeric; // transform of e^{-|x|}
    std::vector<std::complex<double>> odd_numeric;  // of sign(x) e^{-|x|}
    double even_max_error = 0.0;
    double odd_max_error = 0.0;
};

FourierIdentityReport fourier_identity_check();

struct CompletenessOptions {
    double k_cutoff = 40.0;    // plateau multiplier is 1 up to (k_cutoff^2)/2
    double f_halfwidth = 6.0;  // f treated as supported in [-w, w]
    double x_halfwidth = 8.0;  // window for the sup norms
    double x_step = 0.05;
};

struct CompletenessReport {
    double defect = 0.0;    // sup |ac part + bound part - f|
    double ac_sup = 0.0;    // sup |ac part|
    double bound_sup = 0.0; // sup |bound part|
};

// Resolution-of-identity check: a wide plateau multiplier Phi_L applied
// through ac_kernel plus the discrete terms sum phi(-n^2)(f, e_n) e_n should
// reproduce f. The k-integration order is swapped so the y-integral against
// f happens once per k-node. nu = 0 is allowed (no bound part).
CompletenessReport completeness_check(int nu,
                                      const std::function<double(double)>& f,
                                      const CompletenessOptions& opt = {});

} // namespace speclab
