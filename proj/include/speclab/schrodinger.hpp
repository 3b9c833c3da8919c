#pragma once
#include <vector>

#include <Eigen/Dense>

#include "speclab/grid.hpp"
#include "speclab/potential.hpp"

namespace speclab {

// H = -d^2/dx^2 + V by second-order central differences over the active
// nodes: diagonal 2/h^2 + V_i, off-diagonal -1/h^2, corner entries when
// periodic. Stored in factored tridiagonal form; dense() materializes it.
struct OperatorMatrix {
    Grid grid;
    PotentialSpec potential;
    std::vector<double> diag; // one entry per active node
    double off = 0.0;         // the constant off-diagonal -1/h^2
    bool periodic_corner = false;

    std::size_t dim() const { return diag.size(); }
    Eigen::MatrixXd dense() const;
};

OperatorMatrix assemble_hamiltonian(const Grid& grid, const PotentialSpec& pot);

// Spectral data in the h-weighted inner product. Eigenvalues ascending.
// eigenvectors(m, i) = u_i at grid node m — full grid, Dirichlet boundary rows
// exactly zero — normalized so that h * u_i . u_j = delta_ij.
struct SpectralDecomposition {
    Grid grid;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors; // n_points x count

    std::size_t count() const { return std::size_t(eigenvalues.size()); }

    // Discrete point spectrum proxy: eigenvalues strictly below -1e-2.
    std::vector<double> bound_state_energies() const;
};

// Dirichlet operators go through the symmetric-tridiagonal LAPACK path;
// periodic ones (corner entries) through the dense solver. Throws
// eigensolver_error if the backend fails to converge.
SpectralDecomposition eigendecompose(const OperatorMatrix& op);

} // namespace speclab
