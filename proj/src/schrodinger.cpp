#include "speclab/schrodinger.hpp"

#include <cmath>

#include <lapacke.h>

#include "speclab/errors.hpp"

namespace speclab {

Eigen::MatrixXd OperatorMatrix::dense() const {
    const auto n = Eigen::Index(dim());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = diag[std::size_t(i)];
        if (i + 1 < n) {
            m(i, i + 1) = off;
            m(i + 1, i) = off;
        }
    }
    if (periodic_corner && n > 2) {
        m(0, n - 1) = off;
        m(n - 1, 0) = off;
    }
    return m;
}

OperatorMatrix assemble_hamiltonian(const Grid& grid, const PotentialSpec& pot) {
    const std::vector<double> v = sample_potential(grid, pot);
    OperatorMatrix op;
    op.grid = grid;
    op.potential = pot;
    const double h = grid.h();
    op.off = -1.0 / (h * h);
    op.periodic_corner = (grid.boundary == Boundary::periodic);
    const std::size_t n = grid.active_count();
    const std::size_t b = grid.active_begin();
    op.diag.resize(n);
    for (std::size_t i = 0; i < n; ++i) op.diag[i] = 2.0 / (h * h) + v[b + i];
    return op;
}

std::vector<double> SpectralDecomposition::bound_state_energies() const {
    std::vector<double> out;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
        if (eigenvalues[i] < -1e-2) out.push_back(eigenvalues[i]);
    return out;
}

namespace {

// Symmetric-tridiagonal divide & conquer; eigenvalues ascending, eigenvectors
// Euclid-orthonormal in the columns of z.
void tridiag_eigh(std::vector<double>& d, std::vector<double>& e, Eigen::MatrixXd& z) {
    const auto n = lapack_int(d.size());
    z.resize(n, n);
    const lapack_int info =
        LAPACKE_dstevd(LAPACK_COL_MAJOR, 'V', n, d.data(), e.data(), z.data(), n);
    if (info != 0)
        throw eigensolver_error("tridiagonal eigensolver failed, info=" + std::to_string(info));
}

} // namespace

SpectralDecomposition eigendecompose(const OperatorMatrix& op) {
    const Grid& grid = op.grid;
    const std::size_t n = op.dim();
    const std::size_t b = grid.active_begin();
    const double rsqh = 1.0 / std::sqrt(grid.h());

    SpectralDecomposition sd;
    sd.grid = grid;
    sd.eigenvectors = Eigen::MatrixXd::Zero(Eigen::Index(grid.n_points), Eigen::Index(n));

    if (!op.periodic_corner) {
        std::vector<double> d = op.diag;
        std::vector<double> e(n > 0 ? n - 1 : 0, op.off);
        Eigen::MatrixXd z;
        tridiag_eigh(d, e, z);
        sd.eigenvalues = Eigen::Map<Eigen::VectorXd>(d.data(), Eigen::Index(n));
        // Zero-padded back to the full grid and rescaled to h-orthonormality.
        sd.eigenvectors.middleRows(Eigen::Index(b), Eigen::Index(n)) = z * rsqh;
        return sd;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.dense());
    if (es.info() != Eigen::Success)
        throw eigensolver_error("dense eigensolver failed to converge");
    sd.eigenvalues = es.eigenvalues();
    sd.eigenvectors.middleRows(Eigen::Index(b), Eigen::Index(n)) = es.eigenvectors() * rsqh;
    return sd;
}

} // namespace speclab
