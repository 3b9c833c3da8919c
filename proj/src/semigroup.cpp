#include "speclab/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "speclab/errors.hpp"
#include "speclab/simd.hpp"

namespace speclab {

// below this amplitude a synthesised kernel entry is eigensolver roundoff,
// not signal; both the envelope fit and the weighted moments ignore it
constexpr double amplitude_floor = 1e-14;

double free_heat_kernel(double t, double r) {
    return std::exp(-r * r / (4.0 * t)) / std::sqrt(4.0 * std::numbers::pi * t);
}

KernelMatrix heat_kernel_eigen(const SpectralDecomposition& sd, double t) {
    KernelMatrix k = synthesize(
        sd, [t](double lambda) { return std::exp(-t * lambda); },
        "heat t=" + std::to_string(t));
    return k;
}

KernelMatrix heat_kernel_gradient(const KernelMatrix& k) {
    const Eigen::Index n = k.values.rows();
    const double h = k.grid.h();
    KernelMatrix g;
    g.grid = k.grid;
    g.label = "d/dx " + k.label;
    g.derivative_order = k.derivative_order + 1;
    g.values.resize(n, k.values.cols());
    g.values.row(0) = (k.values.row(1) - k.values.row(0)) / h;
    for (Eigen::Index i = 1; i + 1 < n; ++i)
        g.values.row(i) = (k.values.row(i + 1) - k.values.row(i - 1)) / (2.0 * h);
    g.values.row(n - 1) = (k.values.row(n - 1) - k.values.row(n - 2)) / h;
    return g;
}

namespace {

// Thomas factorization for (diag, off) tridiagonal systems with many RHS.
struct TridiagSolver {
    std::vector<double> denom_inv; // 1 / (b_i - off^2 * denom_inv_{i-1})
    double off;

    TridiagSolver(const std::vector<double>& diag, double off_) : off(off_) {
        const std::size_t n = diag.size();
        denom_inv.resize(n);
        double prev = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = diag[i] - off * off * prev;
            denom_inv[i] = 1.0 / d;
            prev = denom_inv[i];
        }
    }

    void solve_inplace(Eigen::Ref<Eigen::VectorXd> rhs) const {
        const std::size_t n = denom_inv.size();
        for (std::size_t i = 1; i < n; ++i)
            rhs[Eigen::Index(i)] -= off * denom_inv[i - 1] * rhs[Eigen::Index(i - 1)];
        rhs[Eigen::Index(n - 1)] *= denom_inv[n - 1];
        for (std::size_t i = n - 1; i-- > 0;)
            rhs[Eigen::Index(i)] =
                denom_inv[i] * (rhs[Eigen::Index(i)] - off * rhs[Eigen::Index(i + 1)]);
    }
};

// y = (I + scale * H) x for the active-block tridiagonal H.
Eigen::MatrixXd tridiag_apply(const std::vector<double>& diag, double off, double scale,
                              const Eigen::MatrixXd& x) {
    const Eigen::Index n = x.rows();
    Eigen::MatrixXd y(n, x.cols());
    for (Eigen::Index i = 0; i < n; ++i) {
        y.row(i) = (1.0 + scale * diag[std::size_t(i)]) * x.row(i);
        if (i > 0) y.row(i) += scale * off * x.row(i - 1);
        if (i + 1 < n) y.row(i) += scale * off * x.row(i + 1);
    }
    return y;
}

} // namespace

KernelMatrix heat_kernel_crank_nicolson(const OperatorMatrix& op, double t,
                                        std::size_t n_steps) {
    if (op.periodic_corner)
        throw std::invalid_argument("crank-nicolson check route supports dirichlet only");
    if (n_steps < 2) throw std::invalid_argument("crank-nicolson needs >= 2 steps");

    const Grid& grid = op.grid;
    const std::size_t na = op.dim();
    const std::size_t b = grid.active_begin();
    const double dt = t / double(n_steps);

    // Delta columns in the h-weighted product: identity / h.
    Eigen::MatrixXd u =
        Eigen::MatrixXd::Identity(Eigen::Index(na), Eigen::Index(na)) / grid.h();

    // Damped start: two implicit-Euler half steps in place of the first step.
    {
        std::vector<double> d(na);
        for (std::size_t i = 0; i < na; ++i) d[i] = 1.0 + 0.5 * dt * op.diag[i];
        TridiagSolver be(d, 0.5 * dt * op.off);
        for (int rep = 0; rep < 2; ++rep)
            for (Eigen::Index col = 0; col < u.cols(); ++col) be.solve_inplace(u.col(col));
    }

    std::vector<double> d(na);
    for (std::size_t i = 0; i < na; ++i) d[i] = 1.0 + 0.5 * dt * op.diag[i];
    TridiagSolver cn(d, 0.5 * dt * op.off);
    for (std::size_t step = 1; step < n_steps; ++step) {
        u = tridiag_apply(op.diag, op.off, -0.5 * dt, u);
        for (Eigen::Index col = 0; col < u.cols(); ++col) cn.solve_inplace(u.col(col));
    }

    KernelMatrix k;
    k.grid = grid;
    k.label = "heat cn t=" + std::to_string(t);
    k.values = Eigen::MatrixXd::Zero(Eigen::Index(grid.n_points), Eigen::Index(grid.n_points));
    k.values.block(Eigen::Index(b), Eigen::Index(b), Eigen::Index(na), Eigen::Index(na)) = u;
    return k;
}

GaussianBoundFit fit_gaussian_bound(
    const std::vector<std::pair<double, KernelMatrix>>& kernels, int alpha, int dim,
    double u_cap) {
    struct Slice {
        double t;
        std::size_t n = 0;
        double su = 0, sb = 0, suu = 0, sub = 0, sbb = 0;
    };
    struct Sample {
        double u, b;
    };

    std::vector<Slice> slices;
    std::vector<Sample> samples;
    const double power = 0.5 * double(dim + alpha);

    for (const auto& [t, k] : kernels) {
        Slice sl;
        sl.t = t;
        const Grid& grid = k.grid;
        const std::size_t b0 = grid.active_begin();
        const std::size_t na = grid.active_count();
        const std::size_t stride = std::max<std::size_t>(1, na / 250);
        const double h = grid.h();
        for (std::size_t i = b0; i < b0 + na; i += stride) {
            for (std::size_t j = b0; j < b0 + na; j += stride) {
                const double val = std::abs(k.values(Eigen::Index(i), Eigen::Index(j)));
                if (val <= amplitude_floor) continue;
                const double r = h * double(i > j ? i - j : j - i);
                const double u = r * r / t;
                if (u > u_cap) continue;
                const double b = std::log(val) + power * std::log(t);
                sl.n++;
                sl.su += u;
                sl.sb += b;
                sl.suu += u * u;
                sl.sub += u * b;
                sl.sbb += b * b;
                samples.push_back({u, b});
            }
        }
        if (sl.n >= 8) slices.push_back(sl);
    }

    if (samples.empty() || slices.empty())
        throw insufficient_range_error(
            "degenerate sample set: no kernel values above the amplitude floor");

    auto regress = [](const Slice& s) {
        // b ~ intercept + slope * u, least squares.
        const double det = double(s.n) * s.suu - s.su * s.su;
        double slope = 0.0, intercept = s.sb / double(s.n);
        if (std::abs(det) > 1e-300 * (1.0 + s.suu)) {
            slope = (double(s.n) * s.sub - s.su * s.sb) / det;
            intercept = (s.sb - slope * s.su) / double(s.n);
        }
        const double sse = s.sbb + double(s.n) * intercept * intercept +
                           slope * slope * s.suu - 2.0 * intercept * s.sb -
                           2.0 * slope * s.sub + 2.0 * intercept * slope * s.su;
        const double rms = std::sqrt(std::max(0.0, sse) / double(s.n));
        return std::tuple<double, double, double>(intercept, slope, rms);
    };

    Slice all;
    for (const Slice& s : slices) {
        all.n += s.n;
        all.su += s.su;
        all.sb += s.sb;
        all.suu += s.suu;
        all.sub += s.sub;
        all.sbb += s.sbb;
    }
    const auto [a_hat, slope_hat, rms_all] = regress(all);
    (void)rms_all;

    GaussianBoundFit fit;
    fit.alpha = alpha;
    fit.log_cn = a_hat;
    fit.c = -slope_hat;

    double spread_lo = std::numeric_limits<double>::infinity();
    double spread_hi = -std::numeric_limits<double>::infinity();
    double noise = std::numeric_limits<double>::infinity();
    for (const Slice& s : slices) {
        const auto [ai, sl, rms] = regress(s);
        (void)sl;
        fit.slice_intercepts.emplace_back(s.t, ai);
        spread_lo = std::min(spread_lo, ai);
        spread_hi = std::max(spread_hi, ai);
        noise = std::min(noise, rms);
    }
    fit.slice_spread = spread_hi - spread_lo;
    fit.noise_floor = noise;

    double worst = -std::numeric_limits<double>::infinity();
    for (const Sample& s : samples)
        worst = std::max(worst, s.b - (a_hat + slope_hat * s.u));
    fit.residual = worst;

    fit.holds = fit.c > 0.0 &&
                fit.slice_spread <= std::max(10.0 * fit.noise_floor, std::numbers::ln2);
    return fit;
}

SemigroupMoments semigroup_moments(const KernelMatrix& k, double s) {
    const auto& kv = k.values;
    const Eigen::Index n = kv.rows();
    const double h = k.grid.h();
    const auto& simd_k = simd::active_kernels();

    SemigroupMoments out;
    const double r_max = k.grid.x_max - k.grid.x_min;
    const bool direct = s * r_max < 600.0;

    std::vector<double> wtab(static_cast<std::size_t>(n));
    if (direct)
        for (Eigen::Index d = 0; d < n; ++d) wtab[std::size_t(d)] = std::exp(s * h * double(d));

    std::vector<double> wcol(static_cast<std::size_t>(n));
    double best_log = -std::numeric_limits<double>::infinity();
    for (Eigen::Index y = 0; y < n; ++y) {
        const double* col = kv.col(y).data();
        out.m2 = std::max(out.m2, h * simd_k.dot(col, col, std::size_t(n)));
        if (direct) {
            // the amplitude floor keeps synthesis roundoff (~1e-15) from being
            // blown up by weights as large as e^{s (x_max - x_min)}
            for (Eigen::Index x = 0; x < n; ++x)
                wcol[std::size_t(x)] = std::abs(col[x]) > amplitude_floor
                                           ? wtab[std::size_t(x > y ? x - y : y - x)]
                                           : 0.0;
            out.m_exp =
                std::max(out.m_exp, h * simd_k.weighted_abs_sum(col, wcol.data(), std::size_t(n)));
        } else {
            // log-sum-exp per column keeps huge exponential weights finite.
            double m = -std::numeric_limits<double>::infinity();
            for (Eigen::Index x = 0; x < n; ++x) {
                const double a = std::abs(col[x]);
                if (a <= amplitude_floor) continue;
                m = std::max(m, std::log(a) + s * h * double(std::abs(x - y)));
            }
            if (m == -std::numeric_limits<double>::infinity()) continue;
            double acc = 0.0;
            for (Eigen::Index x = 0; x < n; ++x) {
                const double a = std::abs(col[x]);
                if (a <= amplitude_floor) continue;
                acc += std::exp(std::log(a) + s * h * double(std::abs(x - y)) - m);
            }
            best_log = std::max(best_log, m + std::log(acc) + std::log(h));
        }
    }
    if (!direct) out.m_exp = std::exp(best_log);
    return out;
}

} // namespace speclab
