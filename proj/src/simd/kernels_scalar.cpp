#include <cmath>
#include <cstddef>

#include "speclab/simd.hpp"

// Reference semantics for every reduction. Kept deliberately plain: these are
// the loops the vector variants are tested against.

namespace speclab::simd {
namespace {

double dot_s(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sum_s(const double* v, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += v[i];
    return acc;
}

double weighted_abs_sum_s(const double* v, const double* w, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::abs(v[i]) * w[i];
    return acc;
}

double max_abs_weighted_s(const double* v, const double* w, std::size_t n) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::abs(v[i]) * w[i];
        if (x > best) best = x;
    }
    return best;
}

void square_accumulate_s(double* acc, const double* v, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += v[i] * v[i];
}

double weighted_cabs_sum_s(const double* re, const double* im, const double* w,
                           std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += std::sqrt(re[i] * re[i] + im[i] * im[i]) * w[i];
    return acc;
}

} // namespace

const Kernels& scalar_kernels() {
    static const Kernels k{dot_s,           sum_s,
                           weighted_abs_sum_s, max_abs_weighted_s,
                           square_accumulate_s, weighted_cabs_sum_s};
    return k;
}

} // namespace speclab::simd
