#pragma once
#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace speclab {

// Smooth compactly supported profile. The base plateau is 1 on [-1/2, 1/2]
// and vanishes (to infinite order) outside [-1, 1].
struct CutoffProfile {
    std::function<double(double)> phi;
    double support_lo = -1.0;
    double support_hi = 1.0;
    std::string smoothness = "C^inf compact";

    double operator()(double x) const { return phi(x); }
    // uniform samples over [support_lo, support_hi], endpoints included
    std::vector<double> samples(std::size_t n) const;
};

// Plateau bump built from wall e^{-q/u^p}. The default p = 1.5 is measured,
// not aesthetic: among candidate walls it is the one whose series generator
// tail passes 1e-6 agreement at truncation 256 (p=1: 7.8e-6; p=2: 2.4e-6).
CutoffProfile make_plateau_cutoff(double p = 1.5, double q = 1.0);

enum class FamilyKind {
    inhomogeneous,   // supp phi_j in {|x| <= 2^j}, phi_j = 1 near 0
    annulus,         // supp phi_j in {2^{j-2} <= |x| <= 2^j}, sums to 1
    square_partition // sqrt of the annulus pieces: sum of squares is 1
};

std::string to_string(FamilyKind k);
FamilyKind family_kind_from_string(const std::string& s);

struct DyadicFamily {
    FamilyKind kind = FamilyKind::annulus;
    CutoffProfile base; // the plateau the pieces are carved from
    int j_min = 0;
    int j_max = 0;
    std::array<double, 5> c_k{}; // sup |d^k phi| of the unscaled piece, k = 0..4

    double phi(int j, double x) const;
    // positive-side support of piece j (families are even in x)
    std::pair<double, double> support(int j) const;
    double partition_sum(double x) const; // sum_j phi_j(x)
};

// Builds the family from one plateau profile via phi_j(x) = piece(2^{-j} x),
// measures the derivative constants c_k by finite differences, and validates
// the support/derivative invariants on sample points.
DyadicFamily make_dyadic_family(FamilyKind kind, int j_min, int j_max);

} // namespace speclab
