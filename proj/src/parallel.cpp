#include "spectral/parallel.hpp"

#include <algorithm>
#include <cstdlib>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace spectral {

int max_threads() {
#if defined(_OPENMP)
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (const char* env = std::getenv("SPECTRAL_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return std::max(1, n);
}

namespace detail {

void run_indexed(std::size_t n, void (*trampoline)(void*, std::size_t), void* ctx, bool parallel) {
    if (!parallel || max_threads() == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) trampoline(ctx, i);
        return;
    }
#if defined(_OPENMP)
    const int threads = max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        trampoline(ctx, static_cast<std::size_t>(i));
#else
    for (std::size_t i = 0; i < n; ++i) trampoline(ctx, i);
#endif
}

} // namespace detail
} // namespace spectral
