#pragma once
#include <cstdint>

#include "speclab/kernel.hpp"

namespace speclab {

// Symmetric submultiplicative weight w(x,y) = e^{beta |x-y|} (1 + scale |x-y|)^a.
// All parameters nonnegative, so w(x,y) <= w(x,z) w(z,y) holds identically;
// validate_submultiplicative double-checks on random triples.
struct WeightSpec {
    double beta = 0.0;  // exponential rate
    double a = 0.0;     // polynomial power
    double scale = 1.0; // distance prefactor inside the polynomial part

    double log_weight(double r) const;
    double operator()(double x, double y) const;

    static WeightSpec polynomial_weight(double a);
    static WeightSpec exp_poly_weight(double beta, double a);
    static WeightSpec scaled_weight(int j, double a); // (1 + 2^{j/2}|x-y|)^a
};

// Random-triple check of w(x,y) <= w(x,z) w(z,y); throws std::invalid_argument
// on the first violation.
void validate_submultiplicative(const WeightSpec& w, std::size_t trials,
                                std::uint64_t seed);

// sup_y int |K(x,y)| w(x,y) dx. By default the max runs over the central half
// of the columns (boundary columns are wall-contaminated); algebraic
// identities like submultiplicativity need every column, so pass
// central_columns_only = false there. Entries at or below the synthesis noise
// floor are ignored; huge weights run in log space.
double weighted_kernel_norm(const KernelMatrix& k, const WeightSpec& w,
                            bool central_columns_only = true);

} // namespace speclab
