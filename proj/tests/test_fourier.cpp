#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "speclab/cutoffs.hpp"
#include "speclab/errors.hpp"
#include "speclab/fourier.hpp"

using namespace speclab;

namespace {
constexpr double pi = std::numbers::pi;

// smooth bump supported inside (0, T), centered, width*T wide, rescale lam
std::vector<double> bump_samples(std::size_t n, double T, double lam = 1.0) {
    const CutoffProfile c = make_plateau_cutoff();
    std::vector<double> g(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double x = T * double(m) / double(n);
        g[m] = c(lam * (x - T / 2.0) / (T / 4.0));
    }
    return g;
}
} // namespace

TEST_SUITE_BEGIN("fourier");

TEST_CASE("coefficients of 1 - cos(x) on its period") {
    const std::size_t n = 512;
    std::vector<double> g(n);
    for (std::size_t m = 0; m < n; ++m) g[m] = 1.0 - std::cos(2.0 * pi * double(m) / double(n));
    const auto c = fourier_coefficients(g);
    CHECK(std::abs(c[0] - 1.0) < 1e-14);
    CHECK(std::abs(c[1] - std::complex<double>(-0.5, 0.0)) < 1e-14);
    for (std::size_t k = 2; k < 10; ++k) CHECK(std::abs(c[k]) < 1e-13);
}

TEST_CASE("line sobolev norm of the gaussian matches closed forms") {
    // ||e^{-x^2/2}||_{H^s}^2 = int e^{-xi^2} (1+xi^2)^s dxi / ... with
    // g^(xi) = sqrt(2 pi) e^{-xi^2/2}; moments of e^{-xi^2} give the values.
    const double h = 24.0 / 4096.0;
    std::vector<double> g(4097);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = -12.0 + h * double(i);
        g[i] = std::exp(-0.5 * x * x);
    }
    const double sp = std::sqrt(pi);
    CHECK(sobolev_norm(g, h, 0.0) == doctest::Approx(std::sqrt(sp)).epsilon(1e-8));
    CHECK(sobolev_norm(g, h, 1.0) == doctest::Approx(std::sqrt(1.5 * sp)).epsilon(1e-8));
    CHECK(sobolev_norm(g, h, 2.0) == doctest::Approx(std::sqrt(2.75 * sp)).epsilon(1e-8));
}

TEST_CASE("periodic check reduces to parseval at s = 0") {
    const double T = 2.0 * pi;
    const auto g = bump_samples(4096, T);
    const auto [lhs, rhs] = periodic_sobolev_check(g, T, 0.0);

    double l2 = 0.0;
    for (double v : g) l2 += v * v;
    l2 = std::sqrt(l2 * T / double(g.size()));
    CHECK(lhs == doctest::Approx(l2).epsilon(1e-12));
    CHECK(lhs / rhs == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("coefficient norm stays below the line norm under rescaling") {
    const double T = 2.0 * pi;
    for (double lam : {1.0, 2.0, 4.0}) {
        const auto g = bump_samples(4096, T, lam);
        const auto [lhs, rhs] = periodic_sobolev_check(g, T, 2.0);
        CHECK(lhs > 0.0);
        CHECK(lhs <= rhs * (1.0 + 1e-6));
        CHECK(lhs > 0.01 * rhs);
    }
}

TEST_CASE("zero samples give zero norms") {
    std::vector<double> g(256, 0.0);
    const auto [lhs, rhs] = periodic_sobolev_check(g, 1.0, 2.0);
    CHECK(lhs == 0.0);
    CHECK(rhs == 0.0);
}

TEST_CASE("support violations are rejected") {
    std::vector<double> g(256, 1.0);
    CHECK_THROWS_AS(periodic_sobolev_check(g, 1.0, 0.0), support_error);
    std::vector<double> tail(256, 0.0);
    tail.back() = 1e-6;
    CHECK_THROWS_AS(periodic_sobolev_check(tail, 1.0, 0.0), support_error);
}

TEST_SUITE_END();
