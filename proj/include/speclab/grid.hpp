#pragma once
#include <cstddef>
#include <string>
#include <vector>

namespace speclab {

enum class Boundary { dirichlet, periodic };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

// Uniform 1-D grid on [x_min, x_max], node m at x_min + m h with
// h = (x_max - x_min)/(n_points - 1). Everything downstream uses the
// h-weighted inner product <u,v>_h = h sum_m u(m) v(m), so grid kernels track
// their continuum counterparts without renormalization.
struct Grid {
    double x_min = 0.0;
    double x_max = 0.0;
    std::size_t n_points = 0;
    Boundary boundary = Boundary::dirichlet;

    double h() const { return (x_max - x_min) / double(n_points - 1); }
    double node(std::size_t m) const { return x_min + double(m) * h(); }
    std::vector<double> nodes() const;

    // Nodes the Hamiltonian acts on. Dirichlet pins both endpoints to zero and
    // keeps the interior (which is what makes the discrete dispersion exact);
    // periodic keeps all nodes with wraparound coupling, period width + h.
    std::size_t active_begin() const { return boundary == Boundary::dirichlet ? 1 : 0; }
    std::size_t active_count() const {
        return boundary == Boundary::dirichlet ? n_points - 2 : n_points;
    }

    bool operator==(const Grid&) const = default;
};

// Throws invalid_range_error when x_min >= x_max or n_points < 16.
Grid build_grid(double x_min, double x_max, std::size_t n_points,
                Boundary boundary = Boundary::dirichlet);

} // namespace speclab
