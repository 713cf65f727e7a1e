#pragma once

#include <vector>

#include "spectral/interval.hpp"
#include "spectral/potential.hpp"
#include "spectral/report.hpp"
#include "spectral/scattering.hpp"

namespace spectral {

/// Truncated gap-length estimate of the 2-periodic problem and the two-sided
/// norm inequalities tied to it. Works on the zero-mean shift of the input.
struct GapEstimate {
    double shift = 0.0;     // c0 subtracted to reach zero mean
    double gamma = 0.0;     // sqrt(sum of the first n_used squared gap lengths)
    double norm_q = 0.0;    // L2 norm of the shifted potential
    double rhs_2gamma = 0.0;  // 2 gamma max(1, gamma^{1/3})
    double rhs_2norm = 0.0;   // 2 |q| max(1, |q|^{1/3})
    int n_used = 0;
    bool tail_ok = false;     // last-8 squared gap sum below 1e-6 gamma^2
    bool lower_consistent = false; // norm_q <= rhs_2gamma at this truncation
};

GapEstimate gap_estimate(const Potential& p, int n_max = 64);

/// Evaluation of the eigenvalue-counting and eigenvalue-sum bounds. Entries
/// whose hypothesis fails are reported skipped, with the hypothesis named.
struct BoundsReport {
    PotentialFunctionals inputs;
    double nu2x_shift = 0.0; // mean removed for the gap-based entries
    std::vector<ReportEntry> entries;

    bool has_fail() const;
};

BoundsReport check_bounds(const Potential& p);

} // namespace spectral
