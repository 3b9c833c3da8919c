#pragma once
#include <string>
#include <vector>

#include "speclab/grid.hpp"

namespace speclab {

enum class PotentialKind { free_particle, poschl_teller, constant, table };

std::string to_string(PotentialKind k);
PotentialKind potential_kind_from_string(const std::string& s);

// Potential V(x) on the line. poschl_teller is the reflectionless well
// V(x) = -nu(nu+1) sech^2(x); table carries node-aligned samples.
struct PotentialSpec {
    PotentialKind kind = PotentialKind::free_particle;
    int nu = 1;                  // poschl_teller depth
    double c = 0.0;              // constant level
    std::vector<double> samples; // table values, one per grid node

    static PotentialSpec free_particle_spec();
    static PotentialSpec poschl_teller_spec(int nu);
    static PotentialSpec constant_spec(double c);
    static PotentialSpec table_spec(std::vector<double> samples);

    // Pointwise evaluation; table specs are grid-bound and throw here.
    double operator()(double x) const;

    friend bool operator==(const PotentialSpec&, const PotentialSpec&) = default;
};

// V at every grid node. Throws std::invalid_argument when a table's length
// does not match grid.n_points or a poschl_teller depth is < 1.
std::vector<double> sample_potential(const Grid& grid, const PotentialSpec& pot);

} // namespace speclab
