#include <cmath>

#include <doctest.h>

#include "speclab/errors.hpp"
#include "speclab/semigroup.hpp"

using namespace speclab;

TEST_SUITE_BEGIN("feynman_kac");

TEST_CASE("free potential reduces to the gaussian factor exactly") {
    const auto est = heat_kernel_feynman_kac(PotentialSpec::free_particle_spec(), 0.7,
                                             0.3, -1.1, 512, 16, 42);
    CHECK(est.value == doctest::Approx(free_heat_kernel(0.7, 1.4)).epsilon(1e-14));
    CHECK(est.std_error == 0.0); // every path carries weight one
}

TEST_CASE("constant potential contributes a pure exponential damping") {
    const double t = 1.3, c = 0.8;
    const auto est = heat_kernel_feynman_kac(PotentialSpec::constant_spec(c), t,
                                             -0.5, 0.25, 512, 16, 7);
    CHECK(est.value ==
          doctest::Approx(free_heat_kernel(t, 0.75) * std::exp(-c * t)).epsilon(1e-13));
    CHECK(est.std_error < 1e-16);
}

TEST_CASE("estimates are deterministic per seed") {
    const auto pot = PotentialSpec::poschl_teller_spec(1);
    const auto a = heat_kernel_feynman_kac(pot, 1.0, 0.0, 0.5, 2000, 32, 1234);
    const auto b = heat_kernel_feynman_kac(pot, 1.0, 0.0, 0.5, 2000, 32, 1234);
    const auto c = heat_kernel_feynman_kac(pot, 1.0, 0.0, 0.5, 2000, 32, 99);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
    CHECK(a.value != c.value);
}

TEST_CASE("bridge average agrees with the spectral route on a well") {
    const auto sd = eigendecompose(assemble_hamiltonian(
        build_grid(-20.0, 20.0, 1025), PotentialSpec::poschl_teller_spec(1)));
    const Grid& g = sd.grid;
    const KernelMatrix k = heat_kernel_eigen(sd, 1.0);

    const std::size_t ix = 520, iy = 507; // nodes near 0.31 and -0.20
    const double x = g.node(ix), y = g.node(iy);
    const auto est = heat_kernel_feynman_kac(PotentialSpec::poschl_teller_spec(1), 1.0,
                                             x, y, 50000, 64, 2026);
    const double ref = k.values(Eigen::Index(ix), Eigen::Index(iy));
    CHECK(est.std_error > 0.0);
    CHECK(std::abs(est.value - ref) < 3.0 * est.std_error + 1e-3 * std::abs(ref));
}

TEST_CASE("path and step counts are validated") {
    const auto pot = PotentialSpec::free_particle_spec();
    CHECK_THROWS_AS(heat_kernel_feynman_kac(pot, 1.0, 0.0, 0.0, 1, 16, 5),
                    std::invalid_argument);
    CHECK_THROWS_AS(heat_kernel_feynman_kac(pot, 1.0, 0.0, 0.0, 100, 1, 5),
                    std::invalid_argument);
}

TEST_SUITE_END();
