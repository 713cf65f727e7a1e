#pragma once

#include <vector>

#include "spectral/interval.hpp"
#include "spectral/ode.hpp"
#include "spectral/potential.hpp"

namespace spectral {

/// Values of the half-line/line characteristic functions at complex momentum
/// k, lambda = k^2, obtained from the endpoint identities
///   e^{-ik} psi(k)      = y2'(1) - i k y2(1)
///   e^{-ik} psi'(k)     = i k y1(1) - y1'(1)
///   e^{-ik} w(k)        = 2 i k Delta + lambda y2(1) - y1'(1)
/// The scaled (e^{-ik}-multiplied) forms are entire, real on the imaginary
/// axis, and are the ones used for all root finding.
struct JostEvaluation {
    Complex k;
    Complex psi, psi_prime, wronskian;                      // unscaled values
    Complex scaled_psi, scaled_psi_prime, scaled_wronskian; // e^{-ik} times the above
};

JostEvaluation jost(const Propagator& prop, Complex k);
JostEvaluation jost(const Potential& p, Complex k);

/// Real values of the scaled functions on the imaginary axis k = i t
/// (t of either sign; t < 0 reaches the resonance half of the axis).
double scaled_psi_axis(const Propagator& prop, double t);
double scaled_psi_prime_axis(const Propagator& prop, double t);
double scaled_wronskian_axis(const Propagator& prop, double t);

enum class SpectrumCase { halfline_dirichlet, halfline_neumann, line, line_even };

std::string to_string(SpectrumCase c);

/// Negative eigenvalues of one unbounded-domain operator, found as the
/// imaginary-axis zeros of the matching scaled characteristic function.
struct DiscreteSpectrum {
    SpectrumCase kind = SpectrumCase::halfline_dirichlet;
    std::vector<double> eigenvalues; // increasing, all < 0
    std::vector<double> momenta;     // t_j = sqrt(-E_j), decreasing
    std::vector<double> residuals;
    bool threshold_resonance = false; // scaled value at k = 0 below threshold

    long size() const { return static_cast<long>(eigenvalues.size()); }
};

/// Half-line Dirichlet case: zeros of scaled psi, one in each negative
/// bracket (tau_j, min(0, mu_j)); count must equal the mixed01 negative
/// count. A sign scan over the admissible momentum range guards the bracket
/// structure; a violation raises BracketAnomaly with diagnostics.
DiscreteSpectrum halfline_dirichlet_spectrum(const Propagator& prop);
DiscreteSpectrum halfline_neumann_spectrum(const Propagator& prop);
DiscreteSpectrum line_spectrum(const Propagator& prop);

DiscreteSpectrum halfline_dirichlet_spectrum(const Potential& p);
DiscreteSpectrum halfline_neumann_spectrum(const Potential& p);
DiscreteSpectrum line_spectrum(const Potential& p);

/// Spectrum of the even extension q(|x|) on the line, twice: as the merged
/// union of the two half-line spectra, and independently through the
/// Wronskian of the rescaled length-2 potential. The factorization residual
/// w_e(k) - 2 psi(k) psi'(k) is evaluated on a grid k = i t.
struct EvenLineResult {
    DiscreteSpectrum merged;      // union of half-line Dirichlet and Neumann spectra
    DiscreteSpectrum independent; // from the rescaled Wronskian machinery
    double hausdorff = 0.0;       // distance between the two eigenvalue sets
    std::vector<double> grid_t;   // k = i t sample points
    std::vector<double> factorization_residual;
    std::vector<double> w_even;   // w_e(it) on the grid
    long n_even = 0;              // size of the merged spectrum
};

EvenLineResult even_line_spectrum(const Potential& p, int factorization_grid = 50,
                                  double grid_t_max = 3.0);

} // namespace spectral
