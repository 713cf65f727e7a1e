#pragma once

#include <string>
#include <vector>

#include "spectral/ode.hpp"
#include "spectral/potential.hpp"
#include "spectral/report.hpp"

namespace spectral {

/// Boundary-condition families on [0, 1]:
///   dirichlet  y(0) = y(1) = 0     zeros of y2(1)
///   neumann    y'(0) = y'(1) = 0   zeros of y1'(1), lowest index 0
///   mixed01    y(0) = y'(1) = 0    zeros of y2'(1)
///   mixed10    y'(0) = y(1) = 0    zeros of y1(1)
enum class Family { dirichlet, neumann, mixed01, mixed10 };

std::string to_string(Family f);

struct EigenvalueEntry {
    int index;       // 1-based, except neumann which starts at 0
    double value;
    double residual; // characteristic function at the root, in scaled form
};

struct SpectrumTable {
    Family family;
    std::vector<EigenvalueEntry> entries;
    long negatives = 0;
};

/// Exact count of family eigenvalues below lambda, from the layered phase
/// bookkeeping (no refinement involved).
long eigenvalue_count(const Propagator& prop, Family f, double lambda);

/// First n_max eigenvalues: count-bisection isolates each root, sign
/// bisection plus two safeguarded Newton steps refine it.
SpectrumTable interval_eigenvalues(const Propagator& prop, Family f, int n_max);
SpectrumTable interval_eigenvalues(const Potential& p, Family f, int n_max);

long count_negative(const Propagator& prop, Family f);
long count_negative(const Potential& p, Family f);

struct PeriodicEdge {
    int n;
    double lower, upper; // equal when the gap is closed
    bool closed;
    double residual;
};

/// Band-edge spectrum of the 2-periodic problem: lambda0 solves
/// half_trace = +1, the n-th edge pair solves half_trace = (-1)^n.
struct PeriodicSpectrum {
    double lambda0 = 0.0;
    double lambda0_residual = 0.0;
    std::vector<PeriodicEdge> edges;
    long negatives = 0;              // band-edge eigenvalues < 0, doubles counted twice
    std::vector<double> gap_lengths; // gap_lengths[n-1] = upper_n - lower_n

    /// sqrt(sum of squared gap lengths) over the first n gaps (all if n < 0).
    double gap_l2(int n = -1) const;
};

PeriodicSpectrum periodic_spectrum(const Propagator& prop, int n_max);
PeriodicSpectrum periodic_spectrum(const Potential& p, int n_max);

/// All four interval families plus the periodic edges, computed once and
/// shared by the downstream checks.
struct SpectraSet {
    SpectrumTable dirichlet, neumann, mixed01, mixed10;
    PeriodicSpectrum periodic;

    const SpectrumTable& table(Family f) const;
    double value(Family f, int ordinal) const; // ordinal is 1-based position
};

SpectraSet compute_spectra(const Propagator& prop, int n_max);

/// Margins of the interlacing chain linking the periodic edges with the four
/// interval families, one report entry per inequality instance.
std::vector<ReportEntry> check_interlacing(const SpectraSet& s, int n_max, double tol = 1e-9);
std::vector<ReportEntry> check_interlacing(const Potential& p, int n_max, double tol = 1e-9);

} // namespace spectral
