#pragma once

#include <functional>

namespace spectral {

/// 64-point Gauss-Legendre rule on [a, b].
double gauss64(const std::function<double(double)>& f, double a, double b);

/// Adaptive quadrature built on the 64-point rule: a panel is accepted when
/// it agrees with the sum of its halves to abs_tol (scaled by the running
/// total). Handles integrable square-root kinks at panel ends by bisection.
double adaptive_integral(const std::function<double(double)>& f, double a, double b,
                         double abs_tol = 1e-12, int max_depth = 48);

} // namespace spectral
