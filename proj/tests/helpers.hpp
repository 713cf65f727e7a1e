#pragma once

// Shared test oracles: closed-form bound-state equations for the constant
// well q = -d on [0, 1], solved by long-double bisection. Independent of the
// transfer-matrix code paths they validate.

#include <cmath>
#include <functional>
#include <vector>

namespace testoracle {

inline std::vector<double> bisect_roots(const std::function<long double(long double)>& f,
                                        long double lo, long double hi, int grid = 20000) {
    std::vector<double> roots;
    long double prev_t = lo, prev = f(lo);
    for (int i = 1; i <= grid; ++i) {
        const long double t = lo + (hi - lo) * i / grid;
        const long double cur = f(t);
        if ((cur < 0.0L) != (prev < 0.0L)) {
            long double a = prev_t, b = t, fa = prev;
            for (int it = 0; it < 200; ++it) {
                const long double mid = 0.5L * (a + b);
                const long double fm = f(mid);
                if ((fm < 0.0L) == (fa < 0.0L)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            roots.push_back(static_cast<double>(0.5L * (a + b)));
        }
        prev = cur;
        prev_t = t;
    }
    return roots;
}

// Eigenvalues E = -t^2 of the half-line Dirichlet problem for q = -depth.
inline std::vector<double> well_halfline_dirichlet(double depth) {
    auto f = [depth](long double t) {
        const long double w = std::sqrt((long double)depth - t * t);
        return std::cos(w) + t * std::sin(w) / w;
    };
    std::vector<double> es;
    for (double t : bisect_roots(f, 1e-8L, std::sqrt((long double)depth) - 1e-8L))
        es.push_back(-t * t);
    std::sort(es.begin(), es.end());
    return es;
}

// Half-line Neumann case: omega sin(omega) - t cos(omega) = 0.
inline std::vector<double> well_halfline_neumann(double depth) {
    auto f = [depth](long double t) {
        const long double w = std::sqrt((long double)depth - t * t);
        return w * std::sin(w) - t * std::cos(w);
    };
    std::vector<double> es;
    for (double t : bisect_roots(f, 1e-8L, std::sqrt((long double)depth) - 1e-8L))
        es.push_back(-t * t);
    std::sort(es.begin(), es.end());
    return es;
}

// Full-line case: -2 t cos(omega) - t^2 sin(omega)/omega + omega sin(omega) = 0.
inline std::vector<double> well_line(double depth) {
    auto f = [depth](long double t) {
        const long double w = std::sqrt((long double)depth - t * t);
        return -2.0L * t * std::cos(w) - t * t * std::sin(w) / w + w * std::sin(w);
    };
    std::vector<double> es;
    for (double t : bisect_roots(f, 1e-8L, std::sqrt((long double)depth) - 1e-8L))
        es.push_back(-t * t);
    std::sort(es.begin(), es.end());
    return es;
}

} // namespace testoracle
