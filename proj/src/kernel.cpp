#include "speclab/kernel.hpp"

#include <stdexcept>

namespace speclab {

Eigen::VectorXd KernelMatrix::apply(const Eigen::VectorXd& f) const {
    if (f.size() != values.cols())
        throw std::invalid_argument("kernel apply: length mismatch");
    return grid.h() * (values * f);
}

KernelMatrix compose(const KernelMatrix& a, const KernelMatrix& b) {
    if (a.values.cols() != b.values.rows() || !(a.grid == b.grid))
        throw std::invalid_argument("kernel compose: grid mismatch");
    KernelMatrix out;
    out.grid = a.grid;
    out.values.noalias() = a.grid.h() * (a.values * b.values);
    out.derivative_order = a.derivative_order;
    out.label = a.label + "*" + b.label;
    return out;
}

Eigen::MatrixXd synthesize_diagonal(const SpectralDecomposition& sd,
                                    const Eigen::VectorXd& diagonal) {
    if (diagonal.size() != sd.eigenvalues.size())
        throw std::invalid_argument("synthesis diagonal length mismatch");
    const Eigen::MatrixXd w = sd.eigenvectors * diagonal.asDiagonal();
    Eigen::MatrixXd k;
    k.noalias() = w * sd.eigenvectors.transpose();
    return k;
}

KernelMatrix synthesize(const SpectralDecomposition& sd,
                        const std::function<double(double)>& f, std::string label) {
    Eigen::VectorXd d(sd.eigenvalues.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = f(sd.eigenvalues[i]);
    KernelMatrix out;
    out.grid = sd.grid;
    out.values = synthesize_diagonal(sd, d);
    out.label = std::move(label);
    return out;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> synthesize_complex(
    const SpectralDecomposition& sd,
    const std::function<std::complex<double>(double)>& f) {
    Eigen::VectorXd re(sd.eigenvalues.size()), im(sd.eigenvalues.size());
    for (Eigen::Index i = 0; i < re.size(); ++i) {
        const std::complex<double> z = f(sd.eigenvalues[i]);
        re[i] = z.real();
        im[i] = z.imag();
    }
    return {synthesize_diagonal(sd, re), synthesize_diagonal(sd, im)};
}

} // namespace speclab
