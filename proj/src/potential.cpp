#include "speclab/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace speclab {

std::string to_string(PotentialKind k) {
    switch (k) {
        case PotentialKind::free_particle: return "free";
        case PotentialKind::poschl_teller: return "poschl_teller";
        case PotentialKind::constant: return "constant";
        case PotentialKind::table: return "table";
    }
    return "free";
}

PotentialKind potential_kind_from_string(const std::string& s) {
    if (s == "free") return PotentialKind::free_particle;
    if (s == "poschl_teller") return PotentialKind::poschl_teller;
    if (s == "constant") return PotentialKind::constant;
    if (s == "table") return PotentialKind::table;
    throw std::invalid_argument("unknown potential kind: " + s);
}

PotentialSpec PotentialSpec::free_particle_spec() { return PotentialSpec{}; }

PotentialSpec PotentialSpec::poschl_teller_spec(int nu) {
    PotentialSpec p;
    p.kind = PotentialKind::poschl_teller;
    p.nu = nu;
    return p;
}

PotentialSpec PotentialSpec::constant_spec(double c) {
    PotentialSpec p;
    p.kind = PotentialKind::constant;
    p.c = c;
    return p;
}

PotentialSpec PotentialSpec::table_spec(std::vector<double> samples) {
    PotentialSpec p;
    p.kind = PotentialKind::table;
    p.samples = std::move(samples);
    return p;
}

double PotentialSpec::operator()(double x) const {
    switch (kind) {
        case PotentialKind::free_particle: return 0.0;
        case PotentialKind::poschl_teller: {
            // sech^2 through cosh overflows past ~710; the true value there
            // underflows anyway, so clamp.
            if (std::abs(x) > 350.0) return 0.0;
            const double s = 1.0 / std::cosh(x);
            return -double(nu) * double(nu + 1) * s * s;
        }
        case PotentialKind::constant: return c;
        case PotentialKind::table:
            throw std::invalid_argument("table potentials are grid-bound; use sample_potential");
    }
    return 0.0;
}

std::vector<double> sample_potential(const Grid& grid, const PotentialSpec& pot) {
    if (pot.kind == PotentialKind::poschl_teller && pot.nu < 1)
        throw std::invalid_argument("poschl_teller depth must be a positive integer");
    if (pot.kind == PotentialKind::table) {
        if (pot.samples.size() != grid.n_points)
            throw std::invalid_argument("potential table length does not match grid node count");
        return pot.samples;
    }
    std::vector<double> v(grid.n_points);
    for (std::size_t m = 0; m < grid.n_points; ++m) v[m] = pot(grid.node(m));
    return v;
}

} // namespace speclab
