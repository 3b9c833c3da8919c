#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "speclab/simd.hpp"

using namespace speclab;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed, double lo = -3.0,
                               double hi = 3.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    return v;
}

} // namespace

TEST_SUITE_BEGIN("simd");

// Sizes straddle the vector width on purpose: 0 and 1 hit the tail-only path,
// 4/8 the pure vector path, odd sizes both.
static const std::size_t sizes[] = {0, 1, 3, 4, 7, 8, 31, 128, 1001};

TEST_CASE("vector variants match scalar reference") {
    const auto& s = simd::scalar_kernels();
    const auto& a = simd::active_kernels();
    INFO("active isa: ", simd::active_isa_name());

    for (std::size_t n : sizes) {
        auto v = random_vec(n, 11 + n);
        auto w = random_vec(n, 23 + n, 0.0, 5.0);
        auto im = random_vec(n, 37 + n);

        CHECK(a.sum(v.data(), n) == doctest::Approx(s.sum(v.data(), n)).epsilon(1e-12));
        CHECK(a.dot(v.data(), w.data(), n) ==
              doctest::Approx(s.dot(v.data(), w.data(), n)).epsilon(1e-12));
        CHECK(a.weighted_abs_sum(v.data(), w.data(), n) ==
              doctest::Approx(s.weighted_abs_sum(v.data(), w.data(), n)).epsilon(1e-12));
        // max is association-free: exact agreement required.
        CHECK(a.max_abs_weighted(v.data(), w.data(), n) ==
              s.max_abs_weighted(v.data(), w.data(), n));
        CHECK(a.weighted_cabs_sum(v.data(), im.data(), w.data(), n) ==
              doctest::Approx(s.weighted_cabs_sum(v.data(), im.data(), w.data(), n))
                  .epsilon(1e-12));

        auto acc1 = random_vec(n, 53 + n);
        auto acc2 = acc1;
        s.square_accumulate(acc1.data(), v.data(), n);
        a.square_accumulate(acc2.data(), v.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(acc1[i] == doctest::Approx(acc2[i]));
    }
}

TEST_CASE("reductions handle signed values and zeros") {
    const auto& a = simd::active_kernels();
    std::vector<double> v = {-2.0, 0.0, 1.5, -0.5, 0.0, 3.0, -1.0};
    std::vector<double> w = {1.0, 10.0, 2.0, 4.0, 0.0, 0.5, 1.0};
    CHECK(a.weighted_abs_sum(v.data(), w.data(), v.size()) ==
          doctest::Approx(2.0 + 3.0 + 2.0 + 1.5 + 1.0));
    CHECK(a.max_abs_weighted(v.data(), w.data(), v.size()) == doctest::Approx(3.0));
    CHECK(a.max_abs_weighted(v.data(), w.data(), 0) == 0.0);
}

TEST_SUITE_END();
