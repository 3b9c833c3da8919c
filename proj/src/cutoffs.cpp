#include "speclab/cutoffs.hpp"

#include <cmath>
#include <stdexcept>

namespace speclab {

namespace {

// one-sided wall: 0 for u <= 0, e^{-q/u^p} for u > 0, flat at both ends
double wall(double u, double p, double q) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return std::exp(-q);
    return std::exp(-q / std::pow(u, p));
}

// monotone C^inf step: 0 for u <= 0, 1 for u >= 1
double smooth_step(double u, double p, double q) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double a = wall(u, p, q);
    const double b = wall(1.0 - u, p, q);
    return a / (a + b);
}

// annulus piece carved from the plateau: positive exactly on 1/4 < |x| < 1
double annulus_piece(const CutoffProfile& base, double x) {
    return base(x) - base(2.0 * x);
}

// 5-point finite-difference stencils for d^k, k = 1..4
double fd_derivative(const std::function<double(double)>& f, double x, int k, double h) {
    switch (k) {
        case 1: return (f(x + h) - f(x - h)) / (2.0 * h);
        case 2: return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
        case 3:
            return (f(x + 2 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2 * h)) /
                   (2.0 * h * h * h);
        case 4:
            return (f(x + 2 * h) - 4.0 * f(x + h) + 6.0 * f(x) - 4.0 * f(x - h) +
                    f(x - 2 * h)) /
                   (h * h * h * h);
        default: throw std::invalid_argument("derivative order out of range");
    }
}

} // namespace

std::vector<double> CutoffProfile::samples(std::size_t n) const {
    if (n < 2) throw std::invalid_argument("need at least 2 samples");
    std::vector<double> out(n);
    const double step = (support_hi - support_lo) / double(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = phi(support_lo + step * double(i));
    return out;
}

CutoffProfile make_plateau_cutoff(double p, double q) {
    if (p <= 0.0 || q <= 0.0) throw std::invalid_argument("wall parameters must be positive");
    CutoffProfile c;
    c.phi = [p, q](double x) {
        // 1 on [-1/2, 1/2], walls on 1/2 < |x| < 1, 0 outside [-1, 1]
        return smooth_step(2.0 * (1.0 - std::abs(x)), p, q);
    };
    c.support_lo = -1.0;
    c.support_hi = 1.0;
    return c;
}

std::string to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::inhomogeneous: return "inhomogeneous";
        case FamilyKind::annulus: return "annulus";
        case FamilyKind::square_partition: return "square_partition";
    }
    return "unknown";
}

FamilyKind family_kind_from_string(const std::string& s) {
    if (s == "inhomogeneous") return FamilyKind::inhomogeneous;
    if (s == "annulus") return FamilyKind::annulus;
    if (s == "square_partition") return FamilyKind::square_partition;
    throw std::invalid_argument("unknown family kind: " + s);
}

double DyadicFamily::phi(int j, double x) const {
    const double u = std::ldexp(x, -j); // 2^{-j} x
    switch (kind) {
        case FamilyKind::inhomogeneous: return base(u);
        case FamilyKind::annulus: return annulus_piece(base, u);
        case FamilyKind::square_partition: {
            const double v = annulus_piece(base, u);
            return v > 0.0 ? std::sqrt(v) : 0.0;
        }
    }
    return 0.0;
}

std::pair<double, double> DyadicFamily::support(int j) const {
    if (kind == FamilyKind::inhomogeneous) return {0.0, std::ldexp(1.0, j)};
    return {std::ldexp(1.0, j - 2), std::ldexp(1.0, j)};
}

double DyadicFamily::partition_sum(double x) const {
    double acc = 0.0;
    for (int j = j_min; j <= j_max; ++j) acc += phi(j, x);
    return acc;
}

DyadicFamily make_dyadic_family(FamilyKind kind, int j_min, int j_max) {
    if (j_min > j_max) throw std::invalid_argument("empty dyadic range");

    DyadicFamily fam;
    fam.kind = kind;
    fam.base = make_plateau_cutoff();
    fam.j_min = j_min;
    fam.j_max = j_max;

    // measure sup |d^k piece| on the unscaled (j = 0) piece; scaling then
    // gives |phi_j^{(k)}| <= c_k 2^{-kj} identically. The walls transition over
    // ~2% of the support, so both the sweep and the stencil must be fine; the
    // stencil widens with k to keep 1e-16/h^k roundoff below the signal.
    const auto piece = [&fam, kind](double x) { return fam.phi(0, x); };
    fam.c_k[0] = 0.0;
    for (int k = 0; k <= 4; ++k) {
        const double fd_h = k <= 2 ? 2e-4 : 2e-3;
        double worst = 0.0;
        for (double x = -1.02; x <= 1.02; x += 1e-4) {
            const double v = k == 0 ? piece(x) : fd_derivative(piece, x, k, fd_h);
            worst = std::max(worst, std::abs(v));
        }
        fam.c_k[std::size_t(k)] = worst * 1.02; // small slack over the sampled sup
    }

    // spot-validate the scaled invariants
    for (int j : {j_min, j_max}) {
        const auto [lo, hi] = fam.support(j);
        for (int i = 0; i <= 40; ++i) {
            const double x = hi * (1.01 + 0.2 * double(i) / 40.0);
            if (fam.phi(j, x) != 0.0)
                throw std::logic_error("dyadic piece leaks outside its support");
        }
        const double scale = std::ldexp(1.0, -j);
        for (int i = 1; i < 40; ++i) {
            const double x = lo + (hi - lo) * double(i) / 40.0;
            const double d1 = (fam.phi(j, x + 1e-5 / scale) - fam.phi(j, x - 1e-5 / scale)) /
                              (2e-5 / scale);
            if (std::abs(d1) > fam.c_k[1] * scale * 1.05 + 1e-9)
                throw std::logic_error("dyadic derivative bound violated");
        }
    }
    return fam;
}

} // namespace speclab
