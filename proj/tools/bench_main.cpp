// Serial versus OpenMP timings for the two data-parallel kernels: batch
// transfer-matrix evaluation over a lambda grid and the per-index Sturm
// bisections of the finite-difference oracle.

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "spectral/corpus.hpp"
#include "spectral/ode.hpp"
#include "spectral/oracle.hpp"
#include "spectral/parallel.hpp"

using namespace spectral;

namespace {

double time_ms(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-34s %10.2f ms %10.2f ms %8.2fx\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms);
}

} // namespace

int main() {
    std::printf("threads available: %d\n", max_threads());
    std::printf("%-34s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        const Potential p = corpus_potential(7, 0);
        Propagator prop(p);
        std::vector<Complex> grid;
        for (int i = 0; i < 40000; ++i) grid.emplace_back(0.5 + 2.5 * i, 0.3);
        volatile double sink = 0.0;
        const double ts = time_ms([&] {
            auto r = fundamental_matrices(prop, grid, false);
            sink = sink + r.back().y1.real();
        });
        const double tp = time_ms([&] {
            auto r = fundamental_matrices(prop, grid, true);
            sink = sink + r.back().y1.real();
        });
        row("transfer matrices, 8-cell step", ts, tp);
    }
    {
        const Potential p = smooth_meanzero(7, 0);
        Propagator prop(p);
        std::vector<Complex> grid;
        for (int i = 0; i < 400; ++i) grid.emplace_back(0.5 + 25.0 * i, 0.0);
        volatile double sink = 0.0;
        const double ts = time_ms([&] {
            auto r = fundamental_matrices(prop, grid, false);
            sink = sink + r.back().y1.real();
        });
        const double tp = time_ms([&] {
            auto r = fundamental_matrices(prop, grid, true);
            sink = sink + r.back().y1.real();
        });
        row("transfer matrices, cubic cells", ts, tp);
    }
    {
        const Potential p = corpus_potential(7, 1);
        const auto op = DiscretizedOperator::build(p, OracleProblem::interval_dirichlet, 16384);
        volatile double sink = 0.0;
        const double ts = time_ms([&] { sink = sink + oracle_spectrum(op, 12, false).back(); });
        const double tp = time_ms([&] { sink = sink + oracle_spectrum(op, 12, true).back(); });
        row("oracle sturm bisection, n=16384", ts, tp);
    }
    return 0;
}
