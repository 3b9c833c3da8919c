#pragma once
#include <cstddef>
#include <string>

namespace speclab::simd {

// Reduction kernels used by the weighted-norm and decay-statistic loops.
// The scalar table defines the semantics; vector variants are selected at
// runtime from CPU capabilities and must agree with scalar up to
// reduction-order rounding (pinned by the equivalence tests).
struct Kernels {
    double (*dot)(const double* a, const double* b, std::size_t n);
    double (*sum)(const double* v, std::size_t n);
    // sum_i |v_i| w_i
    double (*weighted_abs_sum)(const double* v, const double* w, std::size_t n);
    // max_i |v_i| w_i  (0 for empty spans)
    double (*max_abs_weighted)(const double* v, const double* w, std::size_t n);
    // acc_i += v_i^2
    void (*square_accumulate)(double* acc, const double* v, std::size_t n);
    // sum_i sqrt(re_i^2 + im_i^2) w_i
    double (*weighted_cabs_sum)(const double* re, const double* im,
                                const double* w, std::size_t n);
};

const Kernels& scalar_kernels();

// Best table the host supports. Environment override SPECLAB_ISA=scalar|avx2|neon
// forces a specific one (unsupported requests fall back to scalar).
const Kernels& active_kernels();
std::string active_isa_name();

} // namespace speclab::simd
