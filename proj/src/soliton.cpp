#include "speclab/soliton.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "speclab/cutoffs.hpp"
#include "speclab/errors.hpp"

namespace speclab {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1]; composite panels of unit-ish
// width make every smooth integral here exact to roundoff.
constexpr double gl_x[8] = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
constexpr double gl_w[8] = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

template <class F>
auto gl_panels(const F& fn, double a, double b, std::size_t n)
    -> decltype(fn(0.0)) {
    decltype(fn(0.0)) acc{};
    const double w = (b - a) / double(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double mid = a + (double(i) + 0.5) * w, half = 0.5 * w;
        for (int g = 0; g < 8; ++g) {
            acc += (half * gl_w[g]) * fn(mid - half * gl_x[g]);
            acc += (half * gl_w[g]) * fn(mid + half * gl_x[g]);
        }
    }
    return acc;
}

double sech(double x) { return 1.0 / std::cosh(x); }

// Largest k with phi(k^2) above the support floor, from a log-spaced scan;
// spikes narrower than ~1% in log-lambda would be missed, which none of the
// plateau/heat symbols here have.
double detect_k_support(const std::function<double(double)>& phi,
                        double scan_max) {
    if (!(scan_max > 0.0))
        throw std::invalid_argument("support scan ceiling must be positive");
    constexpr double floor = 1e-15;
    constexpr int samples = 4096;
    const double lo = 1e-12;
    double last = std::abs(phi(0.0)) > floor ? 0.0 : -1.0;
    for (int i = 0; i < samples; ++i) {
        const double lam =
            lo * std::pow(scan_max / lo, double(i) / double(samples - 1));
        if (std::abs(phi(lam)) > floor) last = lam;
    }
    if (last < 0.0) return 0.0;
    if (last >= 0.995 * scan_max)
        throw std::invalid_argument(
            "spectral multiplier does not vanish within the support scan; "
            "pass k_max explicitly");
    return 1.05 * std::sqrt(std::max(last, 1e-12));
}

} // namespace

std::complex<double> PtPolynomial::eval(double tau, double k) const {
    const std::complex<double> ik(0.0, k);
    std::complex<double> acc = 0.0;
    for (std::size_t m = coeff.size(); m-- > 0;) {
        std::complex<double> row = 0.0;
        for (std::size_t r = coeff[m].size(); r-- > 0;)
            row = row * ik + coeff[m][r];
        acc = acc * tau + row;
    }
    return acc;
}

std::complex<double> PtPolynomial::eval_dtau(double tau, double k) const {
    const std::complex<double> ik(0.0, k);
    std::complex<double> acc = 0.0;
    for (std::size_t m = coeff.size(); m-- > 1;) {
        std::complex<double> row = 0.0;
        for (std::size_t r = coeff[m].size(); r-- > 0;)
            row = row * ik + coeff[m][r];
        acc = acc * tau + double(m) * row;
    }
    return acc;
}

double PtPolynomial::leading_tau_coefficient() const {
    return coeff.back().front();
}

PtPolynomial pt_recursion(int nu) {
    if (nu < 0) throw std::invalid_argument("recursion depth must be >= 0");
    PtPolynomial p;
    p.nu = 0;
    p.coeff = {{1.0}};
    for (int n = 1; n <= nu; ++n) {
        std::vector<std::vector<double>> c(std::size_t(n) + 1,
                                           std::vector<double>(std::size_t(n) + 1, 0.0));
        for (int m = 0; m < n; ++m)
            for (int r = 0; r < n; ++r) {
                const double v = p.coeff[std::size_t(m)][std::size_t(r)];
                if (v == 0.0) continue;
                // (1 - tau^2) d/dtau, then ik, then -n tau
                if (m >= 1) c[std::size_t(m) - 1][std::size_t(r)] += double(m) * v;
                c[std::size_t(m) + 1][std::size_t(r)] -= double(m) * v;
                c[std::size_t(m)][std::size_t(r) + 1] += v;
                c[std::size_t(m) + 1][std::size_t(r)] -= double(n) * v;
            }
        p.nu = n;
        p.coeff = std::move(c);
    }
    return p;
}

ScatteringState scattering_state(int nu, double k) {
    if (nu < 0) throw std::invalid_argument("potential depth must be >= 0");
    if (k == 0.0)
        throw std::invalid_argument("k = 0: the sign factor in e(x,k) is undefined");
    ScatteringState st;
    st.nu = nu;
    st.k = k;
    st.poly = pt_recursion(nu);
    std::complex<double> pref = (nu % 2 == 1 && k < 0.0) ? -1.0 : 1.0;
    for (int j = 1; j <= nu; ++j)
        pref /= std::complex<double>(double(j), std::abs(k));
    st.prefactor = pref;
    return st;
}

std::complex<double> ScatteringState::value(double x) const {
    const double tau = std::tanh(x);
    return prefactor * poly.eval(tau, k) * std::polar(1.0, k * x);
}

std::complex<double> ScatteringState::derivative(double x) const {
    const double tau = std::tanh(x);
    const std::complex<double> inner =
        (1.0 - tau * tau) * poly.eval_dtau(tau, k) +
        std::complex<double>(0.0, k) * poly.eval(tau, k);
    return prefactor * inner * std::polar(1.0, k * x);
}

BoundStateSet bound_states(int nu) {
    if (nu < 1 || nu > 3)
        throw std::invalid_argument("bound states are hard-coded for depth 1, 2, 3");
    // associated-Legendre shapes in (sech, tanh); deepest level first
    std::vector<std::pair<int, std::function<double(double)>>> shapes;
    switch (nu) {
        case 1:
            shapes = {{1, [](double x) { return sech(x); }}};
            break;
        case 2:
            shapes = {{2, [](double x) { return sech(x) * sech(x); }},
                      {1, [](double x) { return sech(x) * std::tanh(x); }}};
            break;
        default:
            shapes = {{3, [](double x) { return std::pow(sech(x), 3); }},
                      {2, [](double x) { return sech(x) * sech(x) * std::tanh(x); }},
                      {1, [](double x) {
                           const double t = std::tanh(x);
                           return sech(x) * (5.0 * t * t - 1.0);
                       }}};
    }
    BoundStateSet set;
    set.nu = nu;
    for (auto& [m, shape] : shapes) {
        const double norm2 =
            gl_panels([&shape](double x) { const double s = shape(x); return s * s; },
                      -40.0, 40.0, 160);
        const double c = 1.0 / std::sqrt(norm2);
        BoundState bs;
        bs.m = m;
        bs.energy = -double(m) * double(m);
        bs.psi = [c, shape = std::move(shape)](double x) { return c * shape(x); };
        set.states.push_back(std::move(bs));
    }
    return set;
}

AcValue ac_kernel(int nu, const std::function<double(double)>& phi, double x,
                  double y, int alpha, const AcKernelOptions& opt) {
    if (nu < 0) throw std::invalid_argument("potential depth must be >= 0");
    if (alpha != 0 && alpha != 1)
        throw std::invalid_argument("alpha must be 0 or 1");
    if (!(opt.tol > 0.0))
        throw std::invalid_argument("quadrature tolerance must be positive");
    const double k_max =
        opt.k_max > 0.0 ? opt.k_max : detect_k_support(phi, opt.scan_lambda_max);
    if (k_max == 0.0) return {};

    const PtPolynomial p = pt_recursion(nu);
    const double tx = std::tanh(x), ty = std::tanh(y);
    const double r = x - y;
    const auto integrand = [&](double k) -> std::complex<double> {
        double rho = 1.0;
        for (int i = 1; i <= nu; ++i) rho /= double(i * i) + k * k;
        std::complex<double> px = p.eval(tx, k);
        if (alpha == 1)
            px = (1.0 - tx * tx) * p.eval_dtau(tx, k) +
                 std::complex<double>(0.0, k) * px;
        return phi(k * k) * rho * px * p.eval(ty, -k) * std::polar(1.0, k * r);
    };
    // Mirrored panels over [0, k_max]; the two half-axes accumulate
    // separately, and conjugate symmetry of the integrand cancels the
    // imaginary parts — a nonzero residual flags broken symmetry.
    const auto composite = [&](std::size_t n) -> std::complex<double> {
        std::complex<double> pos = 0.0, neg = 0.0;
        const double w = k_max / double(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double mid = (double(i) + 0.5) * w, half = 0.5 * w;
            for (int g = 0; g < 8; ++g)
                for (double s : {mid - half * gl_x[g], mid + half * gl_x[g]}) {
                    pos += (half * gl_w[g]) * integrand(s);
                    neg += (half * gl_w[g]) * integrand(-s);
                }
        }
        return pos + neg;
    };

    // enough panels that each sees O(1) variation of the symbol and of the
    // oscillation e^{ik(x-y)}
    std::size_t n = std::max<std::size_t>(
        {4, std::size_t(std::ceil(0.5 * k_max)),
         std::size_t(std::ceil(k_max * std::abs(r) / 8.0))});
    n = std::min(n, opt.max_panels);
    std::complex<double> prev = composite(n);
    while (true) {
        n *= 2;
        const std::complex<double> cur = composite(n);
        const double scale = 1.0 / (2.0 * M_PI);
        const double err = std::abs(cur - prev) * scale;
        if (err <= opt.tol * (1.0 + std::abs(cur.real()) * scale))
            return {cur.real() * scale, std::abs(cur.imag()) * scale};
        if (n >= opt.max_panels)
            throw quadrature_error("spectral kernel quadrature stalled at " +
                                       std::to_string(n) + " panels",
                                   err);
        prev = cur;
    }
}

KernelSamples sample_soliton_kernel(int nu, const DyadicFamily& family, int j,
                                    int alpha,
                                    const SolitonSampleOptions& opt) {
    if (opt.x_halfwidth <= 0.0 || opt.x_step <= 0.0 || opt.u_cap <= 0.0 ||
        opt.r_floor <= 0.0)
        throw std::invalid_argument("soliton sampler needs a positive window");
    const double sig = std::exp2(0.5 * j);
    AcKernelOptions ko;
    ko.tol = opt.tol;
    ko.k_max = std::sqrt(family.support(j).second);
    ko.max_panels = opt.max_panels;
    const auto phi = [&family, j](double lam) { return family.phi(j, lam); };
    const double dr = std::max(0.4 / sig, 0.0125);
    const double r_max = std::max(opt.u_cap / sig, opt.r_floor);

    KernelSamples out;
    const auto push = [&](double x, double y) {
        out.r.push_back(std::abs(x - y));
        out.magnitude.push_back(
            std::abs(ac_kernel(nu, phi, x, y, alpha, ko).value));
    };
    for (double x = -opt.x_halfwidth; x <= opt.x_halfwidth + 1e-12;
         x += opt.x_step) {
        push(x, x);
        for (double r = dr; r <= r_max + 1e-12; r += dr) {
            push(x, x - r);
            push(x, x + r);
        }
    }
    return out;
}

FourierIdentityReport fourier_identity_check() {
    FourierIdentityReport rep;
    // Simpson over [-40, 40]; the node count puts x = 0 (the kink of
    // e^{-|x|}) on a panel boundary so both halves integrate smoothly.
    constexpr std::size_t n = 32769;
    const double a = -40.0, h = 80.0 / double(n - 1);
    for (int i = -32; i <= 32; ++i) rep.k.push_back(0.25 * double(i));

    double even_err = 0.0, odd_err = 0.0;
    for (double k : rep.k) {
        std::complex<double> even = 0.0, odd = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            const double x = a + double(m) * h;
            const double simpson =
                (m == 0 || m == n - 1) ? 1.0 : (m % 2 == 1 ? 4.0 : 2.0);
            const std::complex<double> osc = std::polar(1.0, -k * x);
            const double f = std::exp(-std::abs(x));
            even += simpson * f * osc;
            odd += simpson * (x > 0.0 ? f : (x < 0.0 ? -f : 0.0)) * osc;
        }
        even *= h / 3.0;
        odd *= h / 3.0;
        rep.even_numeric.push_back(even);
        rep.odd_numeric.push_back(odd);
        const double d = 1.0 + k * k;
        even_err = std::max(even_err, std::abs(even - 2.0 / d));
        odd_err = std::max(odd_err,
                           std::abs(odd - std::complex<double>(0.0, -2.0 * k / d)));
    }
    rep.even_max_error = even_err;
    rep.odd_max_error = odd_err;
    return rep;
}

CompletenessReport completeness_check(int nu,
                                      const std::function<double(double)>& f,
                                      const CompletenessOptions& opt) {
    if (nu < 0) throw std::invalid_argument("potential depth must be >= 0");
    if (!(opt.k_cutoff > 0.0) || !(opt.f_halfwidth > 0.0) ||
        !(opt.x_halfwidth > 0.0) || !(opt.x_step > 0.0))
        throw std::invalid_argument("completeness windows must be positive");

    const CutoffProfile prof = make_plateau_cutoff();
    const double big = opt.k_cutoff * opt.k_cutoff;
    const auto phi = [&](double lam) { return prof(lam / big); };

    const PtPolynomial p = pt_recursion(nu);
    const double w = opt.f_halfwidth;

    // k-nodes on (0, k_cutoff]; the mirror node's contribution is the
    // conjugate, folded in as 2 Re(.) below. Per node, one y-integral of
    // P(tau_y, -ik) e^{-iky} f(y) over the support of f.
    struct Node {
        double k, c; // c = weight * phi(k^2) * rho(k) / (2 pi)
        std::complex<double> b;
    };
    std::vector<Node> nodes;
    const std::size_t k_panels = std::size_t(std::ceil(opt.k_cutoff / 0.5));
    const std::size_t y_panels = std::size_t(std::ceil(2.0 * w / 0.25));
    const double pw = opt.k_cutoff / double(k_panels);
    for (std::size_t i = 0; i < k_panels; ++i) {
        const double mid = (double(i) + 0.5) * pw, half = 0.5 * pw;
        for (int g = 0; g < 8; ++g)
            for (double k : {mid - half * gl_x[g], mid + half * gl_x[g]}) {
                double rho = 1.0;
                for (int j = 1; j <= nu; ++j) rho /= double(j * j) + k * k;
                Node nd;
                nd.k = k;
                nd.c = half * gl_w[g] * phi(k * k) * rho / (2.0 * M_PI);
                nd.b = gl_panels(
                    [&](double yy) {
                        return p.eval(std::tanh(yy), -k) * std::polar(1.0, -k * yy) *
                               f(yy);
                    },
                    -w, w, y_panels);
                nodes.push_back(nd);
            }
    }

    std::vector<BoundState> bound;
    if (nu > 0) bound = bound_states(nu).states;
    std::vector<double> proj;
    for (const auto& bs : bound)
        proj.push_back(phi(bs.energy) *
                       gl_panels([&](double yy) { return f(yy) * bs.psi(yy); }, -w,
                                 w, y_panels));

    CompletenessReport rep;
    for (double x = -opt.x_halfwidth; x <= opt.x_halfwidth + 1e-12;
         x += opt.x_step) {
        const double tau = std::tanh(x);
        double ac = 0.0;
        for (const auto& nd : nodes)
            ac += 2.0 * (nd.c * p.eval(tau, nd.k) * std::polar(1.0, nd.k * x) * nd.b)
                            .real();
        double bd = 0.0;
        for (std::size_t i = 0; i < bound.size(); ++i)
            bd += proj[i] * bound[i].psi(x);
        rep.ac_sup = std::max(rep.ac_sup, std::abs(ac));
        rep.bound_sup = std::max(rep.bound_sup, std::abs(bd));
        rep.defect = std::max(rep.defect, std::abs(ac + bd - f(x)));
    }
    return rep;
}

} // namespace speclab
