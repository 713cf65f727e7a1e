#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace spectral {

enum class PotentialKind { piecewise_constant, piecewise_poly };

/// Integral functionals of the potential used by the eigenvalue-counting and
/// eigenvalue-sum bounds. q_minus = max(-q, 0).
struct PotentialFunctionals {
    double int_q = 0.0;            // ∫ q
    double int_x_qminus = 0.0;     // ∫ x q_-
    double int_qminus = 0.0;       // ∫ q_-
    double int_sqrt_qminus = 0.0;  // ∫ q_-^{1/2}
    std::optional<double> l2_norm; // (∫ q^2)^{1/2}; unset reserved for non-L2 cells
    bool is_monotone = false;
    bool is_nonpositive = false;
};

/// Real potential supported on [0, 1], piecewise constant or piecewise cubic
/// on a strictly increasing breakpoint grid. Evaluation outside [0, 1] is
/// exactly zero. Immutable after construction; safe to share across threads.
class Potential {
public:
    static Potential piecewise_constant(std::vector<double> breakpoints,
                                        const std::vector<double>& values);
    static Potential piecewise_poly(std::vector<double> breakpoints,
                                    std::vector<std::array<double, 4>> coeffs);
    static Potential constant(double value);
    static Potential zero() { return constant(0.0); }

    PotentialKind kind() const { return kind_; }
    std::size_t cell_count() const { return coeffs_.size(); }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    double cell_lo(std::size_t i) const { return breakpoints_[i]; }
    double cell_hi(std::size_t i) const { return breakpoints_[i + 1]; }
    double cell_width(std::size_t i) const { return breakpoints_[i + 1] - breakpoints_[i]; }
    const std::array<double, 4>& cell_coeffs(std::size_t i) const { return coeffs_[i]; }
    bool cell_is_constant(std::size_t i) const;
    bool all_cells_constant() const;

    /// q(x). Breakpoints evaluate to the right-limit value (left-limit at x=1).
    double operator()(double x) const;

    /// ∫ q over [a, b] ∩ [0, 1], in closed form.
    double integral(double a, double b) const;

    double min_value() const;
    double max_value() const;
    double max_qminus() const;   // sup of q_- = max(-q, 0)
    double l1_norm() const;      // ∫ |q|
    double mean() const { return integral(0.0, 1.0); }

    Potential shifted(double eps) const; // q - eps on [0, 1]

    /// The even extension q(|x|) on [-1, 1], translated to [0, 2] and pulled
    /// back to the unit interval: u -> 4 q(|2u - 1|). The substitution maps
    /// the spectral parameter as lambda -> 4 lambda and momentum as k -> 2k.
    Potential even_rescaled() const;

    PotentialFunctionals functionals() const;

private:
    Potential(PotentialKind kind, std::vector<double> breakpoints,
              std::vector<std::array<double, 4>> coeffs);

    PotentialKind kind_;
    std::vector<double> breakpoints_;
    // Local representation per cell: q(x) = sum_j c[j] (x - lo)^j.
    std::vector<std::array<double, 4>> coeffs_;
};

enum class PotentialTransform { even_extension, periodic_extension, shift };

/// Lightweight evaluation view of a derived potential. The even extension
/// lives on [-1, 1], the 2-periodic extension on [0, 2], the shift on [0, 1].
struct DerivedPotential {
    Potential base;
    PotentialTransform transform;
    double eps = 0.0; // shift amount, used when transform == shift

    double operator()(double x) const;
};

} // namespace spectral
