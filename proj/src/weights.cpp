#include "speclab/weights.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "speclab/simd.hpp"

namespace speclab {

namespace {
constexpr double amplitude_floor = 1e-14;
}

double WeightSpec::log_weight(double r) const {
    return beta * r + a * std::log1p(scale * r);
}

double WeightSpec::operator()(double x, double y) const {
    return std::exp(log_weight(std::abs(x - y)));
}

WeightSpec WeightSpec::polynomial_weight(double a) {
    if (a < 0.0) throw std::invalid_argument("polynomial power must be nonnegative");
    return {0.0, a, 1.0};
}

WeightSpec WeightSpec::exp_poly_weight(double beta, double a) {
    if (beta < 0.0 || a < 0.0) throw std::invalid_argument("weight parameters must be nonnegative");
    return {beta, a, 1.0};
}

WeightSpec WeightSpec::scaled_weight(int j, double a) {
    if (a < 0.0) throw std::invalid_argument("polynomial power must be nonnegative");
    return {0.0, a, std::exp2(0.5 * double(j))};
}

void validate_submultiplicative(const WeightSpec& w, std::size_t trials,
                                std::uint64_t seed) {
    if (w.beta < 0.0 || w.a < 0.0 || w.scale <= 0.0)
        throw std::invalid_argument("weight parameters out of range");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-50.0, 50.0);
    for (std::size_t i = 0; i < trials; ++i) {
        const double x = coord(rng), y = coord(rng), z = coord(rng);
        const double lhs = w.log_weight(std::abs(x - y));
        const double rhs = w.log_weight(std::abs(x - z)) + w.log_weight(std::abs(z - y));
        if (lhs > rhs + 1e-12)
            throw std::invalid_argument("weight is not submultiplicative");
    }
}

double weighted_kernel_norm(const KernelMatrix& k, const WeightSpec& w,
                            bool central_columns_only) {
    const auto& kv = k.values;
    const Eigen::Index n = kv.rows();
    const double h = k.grid.h();
    const auto& simd_k = simd::active_kernels();

    const double r_max = k.grid.x_max - k.grid.x_min;
    const bool direct = w.log_weight(r_max) < 600.0;

    std::vector<double> wtab(static_cast<std::size_t>(n));
    for (Eigen::Index d = 0; d < n; ++d)
        wtab[std::size_t(d)] = direct ? std::exp(w.log_weight(h * double(d)))
                                      : w.log_weight(h * double(d));

    const Eigen::Index y_lo = central_columns_only ? n / 4 : 0;
    const Eigen::Index y_hi = central_columns_only ? (3 * n) / 4 : n;
    std::vector<double> wcol(static_cast<std::size_t>(n));
    double best = 0.0;
    double best_log = -std::numeric_limits<double>::infinity();
    for (Eigen::Index y = y_lo; y < y_hi; ++y) {
        const double* col = kv.col(y).data();
        if (direct) {
            for (Eigen::Index x = 0; x < n; ++x)
                wcol[std::size_t(x)] = std::abs(col[x]) > amplitude_floor
                                           ? wtab[std::size_t(x > y ? x - y : y - x)]
                                           : 0.0;
            best = std::max(best,
                            h * simd_k.weighted_abs_sum(col, wcol.data(), std::size_t(n)));
        } else {
            double m = -std::numeric_limits<double>::infinity();
            for (Eigen::Index x = 0; x < n; ++x) {
                const double aabs = std::abs(col[x]);
                if (aabs <= amplitude_floor) continue;
                m = std::max(m, std::log(aabs) + wtab[std::size_t(x > y ? x - y : y - x)]);
            }
            if (m == -std::numeric_limits<double>::infinity()) continue;
            double acc = 0.0;
            for (Eigen::Index x = 0; x < n; ++x) {
                const double aabs = std::abs(col[x]);
                if (aabs <= amplitude_floor) continue;
                acc += std::exp(std::log(aabs) +
                                wtab[std::size_t(x > y ? x - y : y - x)] - m);
            }
            best_log = std::max(best_log, m + std::log(acc) + std::log(h));
        }
    }
    return direct ? best
                  : (best_log == -std::numeric_limits<double>::infinity()
                         ? 0.0
                         : std::exp(best_log));
}

} // namespace speclab
