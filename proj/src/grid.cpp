#include "speclab/grid.hpp"

#include "speclab/errors.hpp"

namespace speclab {

std::string to_string(Boundary b) {
    return b == Boundary::dirichlet ? "dirichlet" : "periodic";
}

Boundary boundary_from_string(const std::string& s) {
    if (s == "dirichlet") return Boundary::dirichlet;
    if (s == "periodic") return Boundary::periodic;
    throw invalid_range_error("unknown boundary kind: " + s);
}

std::vector<double> Grid::nodes() const {
    std::vector<double> xs(n_points);
    for (std::size_t m = 0; m < n_points; ++m) xs[m] = node(m);
    return xs;
}

Grid build_grid(double x_min, double x_max, std::size_t n_points, Boundary boundary) {
    if (!(x_min < x_max))
        throw invalid_range_error("grid range is empty: x_min must be < x_max");
    if (n_points < 16)
        throw invalid_range_error("grid too coarse: need at least 16 nodes");
    return Grid{x_min, x_max, n_points, boundary};
}

} // namespace speclab
