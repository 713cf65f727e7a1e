#pragma once

#include <cstddef>

namespace spectral {

/// Thread budget for the OpenMP kernels: min(omp_get_max_threads(), SPECTRAL_THREADS).
/// Returns 1 when built without OpenMP.
int max_threads();

/// Runs body(i) for i in [0, n). With parallel=true the iterations are
/// distributed over OpenMP threads; each iteration must write only its own
/// slot so the serial and parallel paths produce identical results.
template <class Body>
void parallel_for(std::size_t n, const Body& body, bool parallel = true);

namespace detail {
void run_indexed(std::size_t n, void (*trampoline)(void*, std::size_t), void* ctx, bool parallel);
}

template <class Body>
void parallel_for(std::size_t n, const Body& body, bool parallel) {
    auto trampoline = [](void* ctx, std::size_t i) { (*static_cast<const Body*>(ctx))(i); };
    detail::run_indexed(n, trampoline, const_cast<Body*>(&body), parallel);
}

} // namespace spectral
