#include "speclab/decay.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "speclab/errors.hpp"

namespace speclab {

// Entries at the eigen-synthesis roundoff scale carry no envelope
// information and would otherwise pin the weighted sup at large radii.
constexpr double amplitude_floor = 1e-14;

std::string to_string(DecayVerdict v) {
    switch (v) {
        case DecayVerdict::holds: return "holds";
        case DecayVerdict::fails: return "fails";
        default: return "inconclusive";
    }
}

std::string to_string(DecayTrend t) {
    switch (t) {
        case DecayTrend::bounded: return "bounded";
        case DecayTrend::diverges_up: return "diverges toward +infinity";
        case DecayTrend::diverges_down: return "diverges toward -infinity";
        default: return "inconclusive";
    }
}

DecayFit fit_decay_envelope(const KernelSamples& samples, double scale,
                            double n_target) {
    if (scale <= 0.0) throw std::invalid_argument("envelope scale must be positive");
    if (samples.r.size() != samples.magnitude.size())
        throw std::invalid_argument("radius/magnitude sample size mismatch");

    // sqrt(2)-geometric bins in t = 1 + scale r, matching the dyadic claims.
    const double log_ratio = 0.5 * std::log(2.0);
    std::vector<double> bin_hi; // envelope per bin index
    for (std::size_t i = 0; i < samples.r.size(); ++i) {
        const double a = samples.magnitude[i];
        if (!(a > amplitude_floor)) continue;
        const double t = 1.0 + scale * samples.r[i];
        const auto b = std::size_t(std::log(t) / log_ratio);
        if (bin_hi.size() <= b) bin_hi.resize(b + 1, 0.0);
        bin_hi[b] = std::max(bin_hi[b], a);
    }

    DecayFit fit;
    fit.scale = scale;
    for (std::size_t b = 0; b < bin_hi.size(); ++b)
        if (bin_hi[b] > 0.0) {
            const double t_rep = std::exp((double(b) + 0.5) * log_ratio);
            fit.bin_radius.push_back((t_rep - 1.0) / scale);
            fit.bin_max.push_back(bin_hi[b]);
        }
    if (fit.bin_max.size() < 8)
        throw insufficient_range_error(
            "decay envelope spans " + std::to_string(fit.bin_max.size()) +
            " radius bins, need 8");

    // log M = log c - N log t, least squares over the nonempty bins.
    const std::size_t nb = fit.bin_max.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t b = 0; b < nb; ++b) {
        const double x = std::log(1.0 + scale * fit.bin_radius[b]);
        const double y = std::log(fit.bin_max[b]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double nbd = double(nb);
    const double slope = (nbd * sxy - sx * sy) / (nbd * sxx - sx * sx);
    const double icept = (sy - slope * sx) / nbd;
    fit.exponent = -slope;
    fit.constant = std::exp(icept);
    double rss = 0;
    for (std::size_t b = 0; b < nb; ++b) {
        const double x = std::log(1.0 + scale * fit.bin_radius[b]);
        const double e = std::log(fit.bin_max[b]) - (icept + slope * x);
        rss += e * e;
    }
    fit.residual = std::sqrt(rss / nbd);

    // Verdict: weight the envelope by t^{n_target} and compare the outer
    // quarter of bins against the rest. A bound c (1+sr)^{-N} with stable c
    // means the weighted envelope has stopped growing at the window edge;
    // still climbing into the boundary means the constant never settles.
    // (A global fitted slope would misjudge super-polynomial envelopes.)
    const std::size_t quarter = std::max<std::size_t>(2, nb / 4);
    double inner = 0.0, outer = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
        const double w =
            fit.bin_max[b] * std::pow(1.0 + scale * fit.bin_radius[b], n_target);
        double& side = (b + quarter >= nb) ? outer : inner;
        side = std::max(side, w);
    }
    if (outer <= 1.25 * inner)
        fit.verdict = DecayVerdict::holds;
    else if (outer > 2.0 * inner)
        fit.verdict = DecayVerdict::fails;
    else
        fit.verdict = DecayVerdict::inconclusive;
    return fit;
}

namespace {

// Longest monotone-increasing run of log2 S ending at index `end` walking in
// direction `step`; returns (run length in values, mean log2 increment).
std::pair<int, double> monotone_run(const std::vector<double>& s, int end, int step) {
    int len = 1;
    int i = end;
    while (i - step >= 0 && i - step < int(s.size()) && s[i] > s[i - step]) {
        ++len;
        i -= step;
    }
    const double growth =
        len > 1 ? (std::log2(s[end]) - std::log2(s[i])) / double(len - 1) : 0.0;
    return {len, growth};
}

} // namespace

DecayReport decay_sweep(const KernelSource& source, FamilyKind kind, int alpha,
                        int j_lo, int j_hi, const std::vector<double>& n_values) {
    if (j_hi < j_lo) throw std::invalid_argument("empty j range");
    if (alpha != 0 && alpha != 1)
        throw std::invalid_argument("alpha must be 0 or 1");
    if (n_values.empty()) throw std::invalid_argument("no weight orders requested");

    DecayReport rep;
    rep.kind = kind;
    rep.alpha = alpha;
    rep.n_values = n_values;
    for (int j = j_lo; j <= j_hi; ++j) rep.j_values.push_back(j);
    rep.cells.assign(n_values.size(), {});

    for (int j = j_lo; j <= j_hi; ++j) {
        KernelSamples samples;
        std::string err;
        try {
            samples = source(j, alpha);
        } catch (const std::exception& e) {
            err = e.what();
        }
        for (std::size_t ni = 0; ni < n_values.size(); ++ni) {
            DecayCell cell;
            cell.j = j;
            if (!err.empty()) {
                cell.ok = false;
                cell.error = err;
            } else {
                const double sig = std::exp2(0.5 * j);
                const double norm = std::exp2(-0.5 * j * (1 + alpha));
                double sup = 0.0;
                for (std::size_t i = 0; i < samples.r.size(); ++i) {
                    const double a = samples.magnitude[i];
                    if (!(a > amplitude_floor)) continue;
                    sup = std::max(sup, norm * a * std::pow(1.0 + sig * samples.r[i],
                                                            n_values[ni]));
                }
                if (sup == 0.0) {
                    cell.ok = false;
                    cell.error = "no samples above the synthesis floor";
                } else {
                    cell.S = sup;
                }
            }
            rep.cells[ni].push_back(cell);
        }
    }

    for (std::size_t ni = 0; ni < n_values.size(); ++ni) {
        std::vector<double> s;
        for (const auto& c : rep.cells[ni])
            if (c.ok) s.push_back(c.S);
        if (s.size() < 5) {
            rep.trend.push_back(DecayTrend::inconclusive);
            rep.growth_rate.push_back(0.0);
            continue;
        }
        std::vector<double> sorted = s;
        std::sort(sorted.begin(), sorted.end());
        const double median = sorted[sorted.size() / 2];
        const double peak = sorted.back();
        if (peak <= 3.0 * median) {
            rep.trend.push_back(DecayTrend::bounded);
            rep.growth_rate.push_back(0.0);
            continue;
        }
        // Divergence must ride a monotone run of >= 4 values into an end of
        // the j-range; an interior bump is drift, not a trend.
        const auto [len_up, g_up] = monotone_run(s, int(s.size()) - 1, +1);
        const auto [len_dn, g_dn] = monotone_run(s, 0, -1);
        if (len_up >= 4 && s.back() == peak) {
            rep.trend.push_back(DecayTrend::diverges_up);
            rep.growth_rate.push_back(g_up);
        } else if (len_dn >= 4 && s.front() == peak) {
            rep.trend.push_back(DecayTrend::diverges_down);
            rep.growth_rate.push_back(g_dn);
        } else {
            rep.trend.push_back(DecayTrend::inconclusive);
            rep.growth_rate.push_back(0.0);
        }
    }
    return rep;
}

KernelSamples sample_grid_kernel(const KernelMatrix& k, int j, double u_cap) {
    if (u_cap <= 0.0) throw std::invalid_argument("u_cap must be positive");
    const auto n = k.values.rows();
    const double h = k.grid.h();
    const double sig = std::exp2(0.5 * j);
    KernelSamples out;
    for (Eigen::Index y = n / 4; y < 3 * (n / 4); ++y)
        for (Eigen::Index x = n / 4; x < 3 * (n / 4); ++x) {
            const double r = h * double(std::abs(x - y));
            if (sig * r > u_cap) continue;
            const double a = std::abs(k.values(x, y));
            if (!(a > amplitude_floor)) continue;
            out.r.push_back(r);
            out.magnitude.push_back(a);
        }
    return out;
}

LittlewoodPaleyResult littlewood_paley_ratio(const SpectralDecomposition& sd,
                                             const DyadicFamily& family,
                                             const Eigen::VectorXd& f, double p) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw std::invalid_argument("littlewood-paley exponent needs 1 < p < inf");
    if (f.size() != Eigen::Index(sd.grid.n_points))
        throw std::invalid_argument("test vector does not match the grid");

    const double h = sd.grid.h();
    const Eigen::VectorXd a = h * (sd.eigenvectors.transpose() * f);

    Eigen::VectorXd square = Eigen::VectorXd::Zero(f.size());
    for (int j = family.j_min; j <= family.j_max; ++j) {
        Eigen::VectorXd fa(a.size());
        for (Eigen::Index m = 0; m < a.size(); ++m)
            fa[m] = family.phi(j, sd.eigenvalues[m]) * a[m];
        const Eigen::VectorXd gj = sd.eigenvectors * fa;
        square.array() += gj.array().square();
    }

    double num = 0.0, den = 0.0;
    for (Eigen::Index i = 0; i < f.size(); ++i) {
        num += std::pow(std::sqrt(square[i]), p);
        den += std::pow(std::abs(f[i]), p);
    }
    LittlewoodPaleyResult res;
    res.ratio = den > 0.0 ? std::pow(num / den, 1.0 / p) : 0.0;

    const double a_peak = a.cwiseAbs().maxCoeff();
    res.min_coverage = 1e300;
    for (Eigen::Index m = 0; m < a.size(); ++m) {
        if (std::abs(a[m]) <= 1e-12 * a_peak) continue;
        double cov = 0.0;
        for (int j = family.j_min; j <= family.j_max; ++j) {
            const double v = family.phi(j, sd.eigenvalues[m]);
            cov += v * v;
        }
        res.min_coverage = std::min(res.min_coverage, cov);
    }
    if (res.min_coverage == 1e300) res.min_coverage = 0.0;
    res.coverage_warning = res.min_coverage < 0.5;
    return res;
}

} // namespace speclab
