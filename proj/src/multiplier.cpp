#include "speclab/multiplier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "speclab/errors.hpp"
#include "speclab/fourier.hpp"
#include "speclab/simd.hpp"
#include "speclab/weights.hpp"

namespace speclab {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double amplitude_floor = 1e-14;

// h-weighted L2 norm of one column of a complex kernel
double column_norm(const Eigen::MatrixXd& re, const Eigen::MatrixXd& im, double h,
                   Eigen::Index y) {
    const auto& k = simd::active_kernels();
    const std::size_t n = std::size_t(re.rows());
    const double s = k.dot(re.col(y).data(), re.col(y).data(), n) +
                     k.dot(im.col(y).data(), im.col(y).data(), n);
    return std::sqrt(h * s);
}
} // namespace

KernelMatrix multiplier_eigen(const SpectralDecomposition& sd,
                              const std::function<double(double)>& f,
                              std::string label) {
    return synthesize(sd, f, std::move(label));
}

HebischResult hebisch_multiplier(const SpectralDecomposition& sd,
                                 const CutoffProfile& profile, int j,
                                 std::size_t k_trunc) {
    if (profile.support_lo < -1.0 - 1e-9 || profile.support_hi > 1.0 + 1e-9)
        throw std::invalid_argument("series route needs a profile supported in [-1,1]");

    const std::size_t n_samples = 4096;
    if (k_trunc == 0 || k_trunc > n_samples / 2)
        throw std::invalid_argument("truncation order out of range");

    // the substitution y = e^{-mu} maps the spectrum into (0, 2pi) only when
    // the rescaled operator is almost semibounded from below
    const double scaled_min = std::ldexp(sd.eigenvalues[0], -j);
    if (!(scaled_min > -std::log(two_pi) + 0.05))
        throw spectral_range_error(
            "rescaled spectrum reaches below the periodization window");

    // g(y) = Phi(-log y)/y, supported in [e^{-1}, e] inside (0, 2pi)
    std::vector<double> g(n_samples, 0.0);
    for (std::size_t m = 1; m < n_samples; ++m) {
        const double y = two_pi * double(m) / double(n_samples);
        g[m] = profile(-std::log(y)) / y;
    }
    const auto gh = fourier_coefficients(g);

    double tail = 0.0;
    for (std::size_t k = k_trunc + 1; k < gh.size(); ++k) tail += 2.0 * std::abs(gh[k]);

    HebischResult out;
    out.tail_bound = tail;
    out.tail_warning = tail > 1e-6;

    // symbol at each eigenvalue: mu sum_{|k|<=K} g^(k) e^{ik mu}
    const Eigen::Index n_modes = sd.eigenvalues.size();
    Eigen::VectorXd symbol(n_modes);
    for (Eigen::Index m = 0; m < n_modes; ++m) {
        const double mu = std::exp(-std::ldexp(sd.eigenvalues[m], -j));
        const std::complex<double> rot(std::cos(mu), std::sin(mu));
        std::complex<double> z = 1.0;
        std::complex<double> acc = gh[0];
        for (std::size_t k = 1; k <= k_trunc; ++k) {
            z *= rot;
            acc += gh[k] * z + std::conj(gh[k]) * std::conj(z);
        }
        acc *= mu;
        symbol[m] = acc.real();
        out.imag_residual = std::max(out.imag_residual, std::abs(acc.imag()));
    }

    out.kernel.grid = sd.grid;
    out.kernel.values = synthesize_diagonal(sd, symbol);
    out.kernel.label = "series multiplier j=" + std::to_string(j);
    return out;
}

std::pair<double, double> duality_column_bound(
    const SpectralDecomposition& sd, const std::function<std::complex<double>(double)>& rho,
    const std::function<std::complex<double>(double)>& nu, std::size_t y_index) {
    if (y_index >= sd.grid.n_points) throw std::invalid_argument("column index out of range");

    const auto [pre, pim] = synthesize_complex(
        sd, [&](double lam) { return rho(lam) * nu(lam); });
    const auto [nre, nim] = synthesize_complex(sd, nu);

    double rho_max = 0.0;
    for (Eigen::Index m = 0; m < sd.eigenvalues.size(); ++m)
        rho_max = std::max(rho_max, std::abs(rho(sd.eigenvalues[m])));

    const double h = sd.grid.h();
    const Eigen::Index y = Eigen::Index(y_index);
    return {column_norm(pre, pim, h, y), rho_max * column_norm(nre, nim, h, y)};
}

double oscillatory_weighted_bound(const SpectralDecomposition& sd, int j, double k,
                                  double a) {
    const auto [re, im] = synthesize_complex(sd, [&](double lam) {
        const double mu = std::exp(-std::ldexp(lam, -j));
        // e^{ik mu} mu
        return std::complex<double>(mu * std::cos(k * mu), mu * std::sin(k * mu));
    });

    const WeightSpec w = WeightSpec::scaled_weight(j, a);
    const auto& simd_k = simd::active_kernels();
    const Eigen::Index n = re.rows();
    const double h = sd.grid.h();

    std::vector<double> wtab(static_cast<std::size_t>(n));
    for (Eigen::Index d = 0; d < n; ++d) wtab[std::size_t(d)] = w(0.0, h * double(d));

    std::vector<double> wcol(static_cast<std::size_t>(n));
    double best = 0.0;
    for (Eigen::Index y = n / 4; y < (3 * n) / 4; ++y) {
        for (Eigen::Index x = 0; x < n; ++x) {
            const double mag = std::hypot(re(x, y), im(x, y));
            wcol[std::size_t(x)] =
                mag > amplitude_floor ? wtab[std::size_t(x > y ? x - y : y - x)] : 0.0;
        }
        best = std::max(best, h * simd_k.weighted_cabs_sum(re.col(y).data(),
                                                           im.col(y).data(),
                                                           wcol.data(), std::size_t(n)));
    }
    return best;
}

WeightedMultiplierBound weighted_L1_multiplier(const SpectralDecomposition& sd,
                                               const CutoffProfile& profile, int j,
                                               int N) {
    if (profile.support_lo < -10.0 || profile.support_hi > 10.0)
        throw std::invalid_argument("profile support must sit inside [-10,10]");
    if (N < 0) throw std::invalid_argument("weight power must be nonnegative");

    WeightedMultiplierBound out;
    const KernelMatrix k = multiplier_eigen(
        sd, [&](double lam) { return profile(std::ldexp(lam, -j)); },
        "weighted multiplier j=" + std::to_string(j));
    out.lhs = weighted_kernel_norm(k, WeightSpec::scaled_weight(j, double(N)));

    // coefficient-side Sobolev norm of the profile over a [-11, 11] window,
    // s = (n+1)/2 + N + delta with n = 1 and delta = 1/2
    const double T = 22.0;
    const std::size_t n_samples = 4096;
    std::vector<double> g(n_samples);
    for (std::size_t m = 0; m < n_samples; ++m)
        g[m] = profile(T * double(m) / double(n_samples) - T / 2.0);
    out.sobolev = periodic_sobolev_check(g, T, double(N) + 1.5).lhs;
    return out;
}

} // namespace speclab
