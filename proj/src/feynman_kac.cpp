#include <cmath>
#include <cstdint>
#include <numbers>

#include "speclab/semigroup.hpp"

namespace speclab {
namespace {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Small self-contained generator: splitmix stream + Box-Muller. Keeps the
// estimator bit-reproducible across standard libraries.
struct NormalStream {
    std::uint64_t state;
    double spare = 0.0;
    bool have_spare = false;

    explicit NormalStream(std::uint64_t seed) : state(seed) {}

    double uniform() { // in (0, 1]
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return (double(z >> 11) + 1.0) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * std::numbers::pi * u2;
        spare = rad * std::sin(ang);
        have_spare = true;
        return rad * std::cos(ang);
    }
};

} // namespace

FeynmanKacEstimate heat_kernel_feynman_kac(const PotentialSpec& pot, double t, double x,
                                           double y, std::size_t n_paths,
                                           std::size_t n_steps, std::uint64_t seed) {
    if (n_paths < 2 || n_steps < 2)
        throw std::invalid_argument("feynman-kac needs >= 2 paths and >= 2 steps");

    const double dt = t / double(n_steps);
    const double p_free = free_heat_kernel(t, x - y);

    double mean = 0.0, m2 = 0.0; // Welford over the bridge weights
    for (std::size_t p = 0; p < n_paths; ++p) {
        NormalStream rng(splitmix64(seed ^ (0xd1b54a32d192ed03ULL + p * 0x9e3779b97f4a7c15ULL)));
        double b = x;
        double integral = 0.5 * pot(b);
        for (std::size_t i = 0; i + 1 < n_steps; ++i) {
            const double remaining = t - double(i) * dt;
            const double drift = (y - b) * dt / remaining;
            const double var = 2.0 * dt * (remaining - dt) / remaining;
            b += drift + std::sqrt(var) * rng.normal();
            integral += pot(b);
        }
        integral += 0.5 * pot(y); // final node pinned at y exactly
        const double w = std::exp(-dt * integral);

        const double delta = w - mean;
        mean += delta / double(p + 1);
        m2 += delta * (w - mean);
    }
    const double var = m2 / double(n_paths - 1);

    FeynmanKacEstimate est;
    est.value = p_free * mean;
    est.std_error = p_free * std::sqrt(var / double(n_paths));
    return est;
}

} // namespace speclab
