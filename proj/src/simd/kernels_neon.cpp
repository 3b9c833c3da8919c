// NEON variants for aarch64 (2-lane f64). Compiled only on ARM builds;
// selected at runtime by dispatch.cpp.
#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>
#include <cstddef>

#include "speclab/simd.hpp"

namespace speclab::simd {
namespace {

double dot_v(const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
    double r = vaddvq_f64(acc);
    for (; i < n; ++i) r += a[i] * b[i];
    return r;
}

double sum_v(const double* v, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(v + i));
    double r = vaddvq_f64(acc);
    for (; i < n; ++i) r += v[i];
    return r;
}

double weighted_abs_sum_v(const double* v, const double* w, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        acc = vfmaq_f64(acc, vabsq_f64(vld1q_f64(v + i)), vld1q_f64(w + i));
    double r = vaddvq_f64(acc);
    for (; i < n; ++i) r += std::abs(v[i]) * w[i];
    return r;
}

double max_abs_weighted_v(const double* v, const double* w, std::size_t n) {
    float64x2_t best = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        best = vmaxq_f64(best, vmulq_f64(vabsq_f64(vld1q_f64(v + i)), vld1q_f64(w + i)));
    double r = vmaxvq_f64(best);
    for (; i < n; ++i) {
        const double x = std::abs(v[i]) * w[i];
        if (x > r) r = x;
    }
    return r;
}

void square_accumulate_v(double* acc, const double* v, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t x = vld1q_f64(v + i);
        vst1q_f64(acc + i, vfmaq_f64(vld1q_f64(acc + i), x, x));
    }
    for (; i < n; ++i) acc[i] += v[i] * v[i];
}

double weighted_cabs_sum_v(const double* re, const double* im, const double* w,
                           std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t r = vld1q_f64(re + i);
        const float64x2_t m = vld1q_f64(im + i);
        const float64x2_t mod = vsqrtq_f64(vfmaq_f64(vmulq_f64(m, m), r, r));
        acc = vfmaq_f64(acc, mod, vld1q_f64(w + i));
    }
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += std::sqrt(re[i] * re[i] + im[i] * im[i]) * w[i];
    return s;
}

} // namespace

const Kernels& neon_kernels() {
    static const Kernels k{dot_v,           sum_v,
                           weighted_abs_sum_v, max_abs_weighted_v,
                           square_accumulate_v, weighted_cabs_sum_v};
    return k;
}

} // namespace speclab::simd

#endif // __aarch64__
