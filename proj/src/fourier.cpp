#include "speclab/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fftw3.h>

#include "speclab/errors.hpp"

namespace speclab {

namespace {

// forward r2c transform: X_k = sum_m x_m e^{-2 pi i k m / N}, k = 0..N/2
std::vector<std::complex<double>> dft_half_spectrum(std::span<const double> samples) {
    const std::size_t n = samples.size();
    std::vector<double> in(samples.begin(), samples.end());
    std::vector<std::complex<double>> out(n / 2 + 1);
    fftw_plan plan = fftw_plan_dft_r2c_1d(int(n), in.data(),
                                          reinterpret_cast<fftw_complex*>(out.data()),
                                          FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    return out;
}

} // namespace

std::vector<std::complex<double>> fourier_coefficients(std::span<const double> samples) {
    if (samples.size() < 2) throw std::invalid_argument("need at least 2 samples");
    auto out = dft_half_spectrum(samples);
    const double scale = 1.0 / double(samples.size());
    for (auto& c : out) c *= scale;
    return out;
}

double sobolev_norm(std::span<const double> samples, double h, double s) {
    if (samples.size() < 2) throw std::invalid_argument("need at least 2 samples");
    if (h <= 0.0) throw std::invalid_argument("sample spacing must be positive");

    // zero-pad 4x: finer frequency resolution for the norm integral
    const std::size_t n = samples.size() * 4;
    std::vector<double> padded(n, 0.0);
    for (std::size_t i = 0; i < samples.size(); ++i) padded[i] = samples[i];

    const auto spectrum = dft_half_spectrum(padded);
    const double dxi = 2.0 * std::numbers::pi / (double(n) * h);
    double acc = 0.0;
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        const double xi = dxi * double(k);
        const double mag = std::norm(spectrum[k] * h); // |g^(xi_k)|^2
        const double mult = (k == 0 || k + 1 == spectrum.size()) ? 1.0 : 2.0;
        acc += mult * mag * std::pow(1.0 + xi * xi, s);
    }
    return std::sqrt(acc * dxi / (2.0 * std::numbers::pi));
}

SobolevCheck periodic_sobolev_check(std::span<const double> samples, double T, double s) {
    if (T <= 0.0) throw std::invalid_argument("period must be positive");
    if (s < 0.0) throw std::invalid_argument("sobolev order must be nonnegative");
    if (samples.size() < 4) throw std::invalid_argument("need at least 4 samples");
    if (std::abs(samples.front()) > 1e-12 || std::abs(samples.back()) > 1e-12)
        throw support_error("samples must vanish near the window ends");

    SobolevCheck out;
    const auto coeff = fourier_coefficients(samples);
    double acc = 0.0;
    for (std::size_t k = 0; k < coeff.size(); ++k) {
        const double u = double(k) / T;
        const double mult = (k == 0 || k + 1 == coeff.size()) ? 1.0 : 2.0;
        acc += mult * std::norm(coeff[k]) * std::pow(1.0 + u * u, s);
    }
    out.lhs = std::sqrt(T * acc);
    out.rhs = sobolev_norm(samples, T / double(samples.size()), s);
    return out;
}

} // namespace speclab
