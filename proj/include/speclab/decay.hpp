#pragma once
#include <functional>
#include <string>
#include <vector>

#include "speclab/cutoffs.hpp"
#include "speclab/kernel.hpp"

namespace speclab {

// (r, |K|) samples of one kernel; r in physical units. The producer decides
// the (x, y) window, the consumer only sees radii and magnitudes.
struct KernelSamples {
    std::vector<double> r;
    std::vector<double> magnitude;
};

enum class DecayVerdict { holds, fails, inconclusive };
std::string to_string(DecayVerdict v);

struct DecayFit {
    double scale = 1.0;     // s in the fitted law c (1 + s r)^{-N}
    double exponent = 0.0;  // N_est
    double constant = 0.0;  // c_est
    double residual = 0.0;  // rms log residual over the bins
    std::vector<double> bin_radius; // representative r of each nonempty bin
    std::vector<double> bin_max;    // envelope value of each nonempty bin
    DecayVerdict verdict = DecayVerdict::inconclusive;
};

// Envelope fit: bin |K| by 1 + s r in sqrt(2)-geometric bins, take per-bin
// maxima, least-squares in log-log for (c_est, N_est). The verdict against
// the target order weights the envelope by (1+sr)^{n_target} and compares
// the outer quarter of bins to the rest: holds when the weighted envelope
// has stopped growing at the window edge (<= 1.25x), fails when it is still
// climbing into the boundary (> 2x), inconclusive between. Throws
// insufficient_range_error with fewer than 8 nonempty bins.
DecayFit fit_decay_envelope(const KernelSamples& samples, double scale,
                            double n_target);

struct DecayCell {
    int j = 0;
    double S = 0.0;    // sup |K| 2^{-j(1+alpha)/2} (1 + 2^{j/2} r)^N
    bool ok = true;
    std::string error; // per-cell failure (quadrature etc.), sweep continues
};

enum class DecayTrend { bounded, diverges_up, diverges_down, inconclusive };
std::string to_string(DecayTrend t);

struct DecayReport {
    FamilyKind kind{};
    int alpha = 0;
    std::vector<int> j_values;
    std::vector<double> n_values;
    std::vector<std::vector<DecayCell>> cells; // [N index][j index]
    std::vector<DecayTrend> trend;             // per N
    std::vector<double> growth_rate;           // mean log2 step along the run
};

// Kernel source for one scale: samples of |grad^alpha K_j|.
using KernelSource = std::function<KernelSamples(int j, int alpha)>;

// S_j(N) table over a j-range. A scale is "bounded" when max_j S <= 3 median,
// and "diverges" only when the excess comes with a monotone run of at least
// four consecutive j ending at the extreme — drift without a trend stays
// inconclusive. Source exceptions are recorded per cell, not propagated.
DecayReport decay_sweep(const KernelSource& source, FamilyKind kind, int alpha,
                        int j_lo, int j_hi, const std::vector<double>& n_values);

// Windowed samples of a grid kernel: x, y over the central half of the grid,
// scaled radius 2^{j/2}|x - y| capped at u_cap so every j sees the same
// scale-invariant window; entries at the synthesis floor are dropped.
KernelSamples sample_grid_kernel(const KernelMatrix& k, int j,
                                 double u_cap = 10.0);

struct LittlewoodPaleyResult {
    double ratio = 0.0;
    double min_coverage = 0.0; // min over occupied modes of sum_j phi_j^2
    bool coverage_warning = false; // min_coverage < 0.5
};

// || (sum_j |phi_j(H) f|^2)^{1/2} ||_p / ||f||_p in h-weighted norms.
// Everything happens in the eigenbasis, so the cost is one matvec per j.
LittlewoodPaleyResult littlewood_paley_ratio(const SpectralDecomposition& sd,
                                             const DyadicFamily& family,
                                             const Eigen::VectorXd& f, double p);

} // namespace speclab
