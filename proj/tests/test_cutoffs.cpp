#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "speclab/cutoffs.hpp"

using namespace speclab;

TEST_SUITE_BEGIN("cutoffs");

TEST_CASE("plateau profile: 1 inside, 0 outside, monotone walls") {
    const CutoffProfile c = make_plateau_cutoff();
    CHECK(c(0.0) == 1.0);
    CHECK(c(0.5) == 1.0);
    CHECK(c(-0.49) == 1.0);
    CHECK(c(1.0) == 0.0);
    CHECK(c(-1.01) == 0.0);
    CHECK(c(7.0) == 0.0);
    CHECK(c(0.6) > c(0.7));
    CHECK(c(0.7) > c(0.9));
    CHECK(c(0.75) == doctest::Approx(c(-0.75)).epsilon(1e-15));
    CHECK_THROWS_AS(make_plateau_cutoff(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("annulus family telescopes to a partition of unity") {
    const DyadicFamily fam = make_dyadic_family(FamilyKind::annulus, -10, 10);
    for (double x = std::exp2(-8); x <= std::exp2(8); x *= 1.37) {
        CHECK(std::abs(fam.partition_sum(x) - 1.0) < 1e-12);
        CHECK(std::abs(fam.partition_sum(-x) - 1.0) < 1e-12);
    }
}

TEST_CASE("pieces vanish outside their dyadic shells") {
    const DyadicFamily ann = make_dyadic_family(FamilyKind::annulus, -3, 5);
    for (int j : {-3, 0, 5}) {
        const double top = std::exp2(j);
        CHECK(ann.phi(j, top * 1.01) == 0.0);
        CHECK(ann.phi(j, top / 4.0 * 0.99) == 0.0);
        CHECK(ann.phi(j, top * 0.6) > 0.0);
    }
    const DyadicFamily inh = make_dyadic_family(FamilyKind::inhomogeneous, -3, 5);
    for (int j : {-3, 0, 5}) {
        CHECK(inh.phi(j, std::exp2(j) * 1.01) == 0.0);
        CHECK(inh.phi(j, 0.0) == 1.0);
        CHECK(inh.phi(j, -std::exp2(j) * 0.3) == 1.0);
    }
}

TEST_CASE("derivative constants scale as 2^{-kj}") {
    const DyadicFamily fam = make_dyadic_family(FamilyKind::annulus, -4, 6);
    CHECK(fam.c_k[0] >= 1.0);  // the pieces reach 1
    CHECK(fam.c_k[0] <= 1.03); // ... and no higher
    CHECK(fam.c_k[1] > 0.0);

    // max |phi_j'| * 2^j should reproduce c_1 (up to the stored slack)
    for (int j : {-2, 0, 3}) {
        const double s = std::exp2(double(j));
        double worst = 0.0;
        for (double x = s / 4.0; x <= s; x += s / 4000.0) {
            const double d = (fam.phi(j, x + s * 1e-6) - fam.phi(j, x - s * 1e-6)) / (2e-6 * s);
            worst = std::max(worst, std::abs(d));
        }
        CHECK(worst * s == doctest::Approx(fam.c_k[1]).epsilon(0.03));
    }
}

TEST_CASE("square partition sums squares to one") {
    const DyadicFamily fam = make_dyadic_family(FamilyKind::square_partition, -10, 10);
    for (double x = std::exp2(-8); x <= std::exp2(8); x *= 1.61) {
        double acc = 0.0;
        for (int j = fam.j_min; j <= fam.j_max; ++j) {
            const double v = fam.phi(j, x);
            CHECK(v >= 0.0);
            acc += v * v;
        }
        CHECK(std::abs(acc - 1.0) < 1e-12);
    }
}

TEST_CASE("an empty dyadic range is rejected") {
    CHECK_THROWS_AS(make_dyadic_family(FamilyKind::annulus, 3, 2), std::invalid_argument);
}

TEST_SUITE_END();
