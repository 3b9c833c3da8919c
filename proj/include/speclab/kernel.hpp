#pragma once
#include <complex>
#include <functional>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "speclab/schrodinger.hpp"

namespace speclab {

// A kernel K(x_m, x_l) on the grid, acting through the h-weighted product
// (K f)(x) = h sum_y K(x, y) f(y). Composition carries the same h, so the
// discrete operator algebra mirrors the continuum one.
struct KernelMatrix {
    Grid grid;
    Eigen::MatrixXd values;    // n_points x n_points, row index = x
    int derivative_order = 0;  // 0, or 1 after d/dx was applied to the rows
    std::string label;

    Eigen::VectorXd apply(const Eigen::VectorXd& f) const;
};

// h-weighted composition a(x,z) h-dot b(z,y).
KernelMatrix compose(const KernelMatrix& a, const KernelMatrix& b);

// K = sum_m f(lambda_m) u_m u_m^T over the spectral data (real symbol).
KernelMatrix synthesize(const SpectralDecomposition& sd,
                        const std::function<double(double)>& f,
                        std::string label = {});

// Complex symbol; returns (real part, imaginary part).
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> synthesize_complex(
    const SpectralDecomposition& sd,
    const std::function<std::complex<double>(double)>& f);

// Same synthesis from a precomputed diagonal (one value per eigenvalue).
Eigen::MatrixXd synthesize_diagonal(const SpectralDecomposition& sd,
                                    const Eigen::VectorXd& diagonal);

} // namespace speclab
