#pragma once
#include <complex>
#include <functional>
#include <utility>

#include "speclab/cutoffs.hpp"
#include "speclab/kernel.hpp"

namespace speclab {

// f(H) in the eigenbasis: the exact reference every series route is tested
// against.
KernelMatrix multiplier_eigen(const SpectralDecomposition& sd,
                              const std::function<double(double)>& f,
                              std::string label = "multiplier");

struct HebischResult {
    KernelMatrix kernel;
    double imag_residual = 0.0; // max |Im| of the summed symbol (should vanish)
    double tail_bound = 0.0;    // sum of |g^(k)| beyond the truncation
    bool tail_warning = false;  // tail_bound > 1e-6
};

// Phi(2^{-j} H) through the Fourier series of the rescaled semigroup:
// with g(y) = Phi(-log y)/y on [0, 2pi], Phi(2^{-j}H) = sum_k g^(k) e^{ik L} L
// where L = e^{-2^{-j} H}. Requires supp Phi in [-1, 1] and the rescaled
// spectrum to map into the fundamental period: min spec(2^{-j}H) must exceed
// -log(2pi) + 0.05, else eigenvalues alias and a spectral_range_error is
// thrown. g^ comes from a 4096-sample FFT; the reported tail bound is the
// coefficient mass the truncation discards.
HebischResult hebisch_multiplier(const SpectralDecomposition& sd,
                                 const CutoffProfile& profile, int j,
                                 std::size_t k_trunc);

// Column-norm duality: lhs = ||(rho*nu)(H)(., y)||_h, rhs = max|rho| * ||nu(H)(., y)||_h.
// lhs <= rhs, with equality when |rho| is constant on the spectrum.
std::pair<double, double> duality_column_bound(
    const SpectralDecomposition& sd, const std::function<std::complex<double>(double)>& rho,
    const std::function<std::complex<double>(double)>& nu, std::size_t y_index);

// max over central columns y of h sum_x |(e^{ik L} L)(x,y)| (1 + 2^{j/2}|x-y|)^a
// with L = e^{-2^{-j} H}; the caller forms the ratio against (1+|k|)^{1/2+a}.
double oscillatory_weighted_bound(const SpectralDecomposition& sd, int j, double k,
                                  double a);

struct WeightedMultiplierBound {
    double lhs = 0.0;     // sup_y h sum_x |Phi(2^{-j}H)(x,y)| <2^{j/2}(x-y)>^N
    double sobolev = 0.0; // sqrt(T) l^2_s coefficient norm of Phi, s = N + 1.5
};

// Both sides of the weighted-L1 multiplier bound; the ratio lhs/sobolev is
// the statistic whose uniformity over j is under test.
WeightedMultiplierBound weighted_L1_multiplier(const SpectralDecomposition& sd,
                                               const CutoffProfile& profile, int j,
                                               int N);

} // namespace speclab
