#pragma once

#include <vector>

#include "spectral/interval.hpp"
#include "spectral/ode.hpp"
#include "spectral/report.hpp"
#include "spectral/scattering.hpp"

namespace spectral {

struct Rect {
    double x0, x1; // Re k range
    double y0, y1; // Im k range

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
};

/// Number of zeros of the scaled half-line characteristic function inside the
/// rectangle, counted with multiplicity by the winding of its boundary phase.
/// The boundary is auto-perturbed outward when it runs too close to a zero;
/// persistent phase ambiguity raises WindingAmbiguity.
long count_zeros(const Propagator& prop, Rect rect, unsigned jitter_seed = 0);
long count_zeros(const Potential& p, Rect rect, unsigned jitter_seed = 0);

struct ResonanceEntry {
    Complex k;
    int multiplicity = 1;
    double residual = 0.0;
    bool on_axis = false;
    int interval_index = -1;   // j for axis zeros inside (-i t_j, -i t_{j+1}]
    double bracket_lo = 0.0;   // mu_j, when localized
    double bracket_hi = 0.0;   // tau_{j+1}, when localized
};

struct ResonanceSet {
    Rect region{};
    std::vector<ResonanceEntry> zeros;
    long total_count = 0; // winding count of the full region

    std::vector<ResonanceEntry> axis_zeros() const;
};

/// Quadtree subdivision by winding counts down to isolated zeros (refined by
/// complex Newton on the scaled function) or clusters at the size floor. Axis
/// zeros are additionally located by a 1-d sign scan of the real restriction
/// and annotated against the half-line Dirichlet momenta.
ResonanceSet find_resonances(const Propagator& prop, Rect rect, unsigned jitter_seed = 0);
ResonanceSet find_resonances(const Potential& p, Rect rect, unsigned jitter_seed = 0);

/// Localization and parity checks for the axis resonances: every axis zero in
/// the j-th momentum interval must satisfy mu_j < k^2 < tau_{j+1}; the zero
/// counts per interval are odd below the last one and even on it, provided
/// the searched region covers the whole axis segment.
std::vector<ReportEntry> check_localization(const Propagator& prop, const ResonanceSet& rset,
                                            double tol = 1e-9);
std::vector<ReportEntry> check_localization(const Potential& p, const ResonanceSet& rset,
                                            double tol = 1e-9);

} // namespace spectral
