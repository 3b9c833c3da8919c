// AVX2/FMA variants. This TU is the only one compiled with -mavx2 -mfma; it is
// entered only after runtime detection (dispatch.cpp), so plain builds stay
// runnable on baseline x86-64.
#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "speclab/simd.hpp"

namespace speclab::simd {
namespace {

inline __m256d abs_pd(__m256d x) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    return _mm256_and_pd(x, mask);
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot_v(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    double r = hsum(acc);
    for (; i < n; ++i) r += a[i] * b[i];
    return r;
}

double sum_v(const double* v, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(v + i));
    double r = hsum(acc);
    for (; i < n; ++i) r += v[i];
    return r;
}

double weighted_abs_sum_v(const double* v, const double* w, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(abs_pd(_mm256_loadu_pd(v + i)), _mm256_loadu_pd(w + i), acc);
    double r = hsum(acc);
    for (; i < n; ++i) r += std::abs(v[i]) * w[i];
    return r;
}

double max_abs_weighted_v(const double* v, const double* w, std::size_t n) {
    __m256d best = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        best = _mm256_max_pd(
            best, _mm256_mul_pd(abs_pd(_mm256_loadu_pd(v + i)), _mm256_loadu_pd(w + i)));
    double r = hmax(best);
    for (; i < n; ++i) {
        const double x = std::abs(v[i]) * w[i];
        if (x > r) r = x;
    }
    return r;
}

void square_accumulate_v(double* acc, const double* v, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(v + i);
        _mm256_storeu_pd(acc + i, _mm256_fmadd_pd(x, x, _mm256_loadu_pd(acc + i)));
    }
    for (; i < n; ++i) acc[i] += v[i] * v[i];
}

double weighted_cabs_sum_v(const double* re, const double* im, const double* w,
                           std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_loadu_pd(re + i);
        const __m256d m = _mm256_loadu_pd(im + i);
        const __m256d mod = _mm256_sqrt_pd(_mm256_fmadd_pd(r, r, _mm256_mul_pd(m, m)));
        acc = _mm256_fmadd_pd(mod, _mm256_loadu_pd(w + i), acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += std::sqrt(re[i] * re[i] + im[i] * im[i]) * w[i];
    return s;
}

} // namespace

const Kernels& avx2_kernels() {
    static const Kernels k{dot_v,           sum_v,
                           weighted_abs_sum_v, max_abs_weighted_v,
                           square_accumulate_v, weighted_cabs_sum_v};
    return k;
}

} // namespace speclab::simd

#endif // x86_64
