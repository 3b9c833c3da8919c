#include <cstdlib>
#include <string>

#include "speclab/simd.hpp"

namespace speclab::simd {

#if defined(SPECLAB_HAVE_AVX2_TU)
const Kernels& avx2_kernels();
#endif
#if defined(SPECLAB_HAVE_NEON_TU)
const Kernels& neon_kernels();
#endif

namespace {

struct Selection {
    const Kernels* table;
    const char* name;
};

Selection pick() {
    const char* forced = std::getenv("SPECLAB_ISA");
    const std::string want = forced ? forced : "";
    if (want == "scalar") return {&scalar_kernels(), "scalar"};
#if defined(SPECLAB_HAVE_AVX2_TU)
    const bool have_avx2 =
        __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    if (want == "avx2") {
        if (have_avx2) return {&avx2_kernels(), "avx2"};
        return {&scalar_kernels(), "scalar"};
    }
    if (want.empty() && have_avx2) return {&avx2_kernels(), "avx2"};
#endif
#if defined(SPECLAB_HAVE_NEON_TU)
    // NEON is mandatory on aarch64, no runtime probe needed.
    if (want.empty() || want == "neon") return {&neon_kernels(), "neon"};
#endif
    return {&scalar_kernels(), "scalar"};
}

const Selection& selection() {
    static const Selection s = pick();
    return s;
}

} // namespace

const Kernels& active_kernels() { return *selection().table; }

std::string active_isa_name() { return selection().name; }

} // namespace speclab::simd
