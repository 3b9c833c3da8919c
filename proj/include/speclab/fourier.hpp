#pragma once
#include <complex>
#include <span>
#include <vector>

namespace speclab {

// DFT coefficients c_k = (1/N) sum_m g_m e^{-2 pi i k m / N} for k = 0..N/2.
// Input samples live at x_m = m T / N on a period [0, T); for real input the
// negative coefficients are the conjugates of these.
std::vector<std::complex<double>> fourier_coefficients(std::span<const double> samples);

// ||g||_{H^s} from samples with spacing h: the transform of the zero-padded
// samples approximates the line transform (compact support assumed), and the
// norm integrates |g^|^2 (1+xi^2)^s over the resolved band.
double sobolev_norm(std::span<const double> samples, double h, double s);

struct SobolevCheck {
    double lhs = 0.0; // sqrt(T) * l^2_s norm of the periodic coefficients
    double rhs = 0.0; // line H^s norm of the same samples
};

// Both sides of the coefficient-vs-line Sobolev comparison for g sampled at
// x_m = m T / N inside (0, T). Throws support_error when g fails to vanish
// (beyond 1e-12) at the window ends.
SobolevCheck periodic_sobolev_check(std::span<const double> samples, double T, double s);

} // namespace speclab
