#include "spectral/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spectral/errors.hpp"

namespace spectral {
namespace {

double two_x_max_cbrt(double x) { return 2.0 * x * std::max(1.0, std::cbrt(x)); }

// Sum over the negative Dirichlet eigenvalues of |mu|^{1/2}.
double sum_sqrt_dirichlet(const Propagator& prop) {
    const long n = count_negative(prop, Family::dirichlet);
    if (n == 0) return 0.0;
    const SpectrumTable mu = interval_eigenvalues(prop, Family::dirichlet, static_cast<int>(n));
    double acc = 0.0;
    for (const auto& e : mu.entries) acc += std::sqrt(-e.value);
    return acc;
}

// Half-sum over the negative band edges (n >= 1) of |lambda|^{1/2}.
double half_sum_sqrt_edges(const PeriodicSpectrum& ps) {
    double acc = 0.0;
    for (const auto& e : ps.edges) {
        if (e.lower < 0.0) acc += std::sqrt(-e.lower);
        if (e.upper < 0.0) acc += std::sqrt(-e.upper);
    }
    return 0.5 * acc;
}

// Periodic edges needed to classify every negative band-edge eigenvalue: the
// n-th lower edge dominates mu_{n-1}, so the Dirichlet negative count plus
// one spare covers every index that can still be negative.
PeriodicSpectrum negative_periodic_part(const Propagator& prop) {
    const long guard = count_negative(prop, Family::dirichlet) + 1;
    return periodic_spectrum(prop, static_cast<int>(guard));
}

} // namespace

GapEstimate gap_estimate(const Potential& p, int n_max) {
    GapEstimate g;
    g.shift = p.mean();
    const Potential q0 = (g.shift == 0.0) ? p : p.shifted(g.shift);
    g.norm_q = q0.functionals().l2_norm.value_or(0.0);
    Propagator prop(q0);
    int n = std::max(16, n_max);
    while (true) {
        const PeriodicSpectrum ps = periodic_spectrum(prop, n);
        g.n_used = n;
        g.gamma = ps.gap_l2();
        double tail = 0.0;
        for (int i = std::max(0, n - 8); i < n; ++i)
            tail += ps.gap_lengths[i] * ps.gap_lengths[i];
        g.tail_ok = (g.gamma == 0.0) ? (tail == 0.0) : (tail < 1e-6 * g.gamma * g.gamma);
        if (g.tail_ok) break;
        if (n >= 512)
            throw ConvergenceFailure("gap series truncation insufficient at n_max = 512");
        n = std::min(512, 2 * n);
    }
    g.rhs_2gamma = two_x_max_cbrt(g.gamma);
    g.rhs_2norm = two_x_max_cbrt(g.norm_q);
    g.lower_consistent = g.norm_q <= g.rhs_2gamma + 1e-12 * (1.0 + g.rhs_2gamma);
    return g;
}

bool BoundsReport::has_fail() const {
    for (const auto& e : entries)
        if (e.status == CheckStatus::fail) return true;
    return false;
}

BoundsReport check_bounds(const Potential& p) {
    BoundsReport r;
    r.inputs = p.functionals();
    const double tol = 1e-9;

    Propagator prop(p);
    const long n_dir = count_negative(prop, Family::dirichlet);
    const long n_mix = count_negative(prop, Family::mixed01);
    const PeriodicSpectrum ps = negative_periodic_part(prop);

    // counting chain: half the periodic count (less one) is dominated by the
    // Dirichlet count, which the mixed count dominates, which the first
    // moment of q_- dominates
    r.entries.push_back(nonstrict_entry("nu1", "(n-(periodic) - 1)/2 <= n-(dirichlet)",
                                        0.5 * (ps.negatives - 1.0), static_cast<double>(n_dir),
                                        tol));
    r.entries.push_back(nonstrict_entry("nu1", "n-(dirichlet) <= n-(mixed01)",
                                        static_cast<double>(n_dir), static_cast<double>(n_mix),
                                        tol));
    r.entries.push_back(nonstrict_entry("nu1", "n-(mixed01) <= int x q_-",
                                        static_cast<double>(n_mix), r.inputs.int_x_qminus, tol));

    const double S_mu = sum_sqrt_dirichlet(prop);
    const double S_edges = half_sum_sqrt_edges(ps);
    r.entries.push_back(nonstrict_entry("nu2", "sum sqrt|mu|, mu < 0 <= int q_- / 2", S_mu,
                                        0.5 * r.inputs.int_qminus, tol));
    r.entries.push_back(nonstrict_entry("nu2", "half band-edge sqrt sum <= int q_- / 2", S_edges,
                                        0.5 * r.inputs.int_qminus, tol));

    if (r.inputs.is_monotone) {
        const double cc = (2.0 / std::numbers::pi) * r.inputs.int_sqrt_qminus;
        r.entries.push_back(nonstrict_entry("nu3", "n-(dirichlet) <= n-(mixed01)",
                                            static_cast<double>(n_dir),
                                            static_cast<double>(n_mix), tol));
        r.entries.push_back(nonstrict_entry("nu3", "n-(mixed01) <= (2/pi) int sqrt(q_-)",
                                            static_cast<double>(n_mix), cc, tol));
    } else {
        ReportEntry e;
        e.theorem = "nu3";
        e.instance = "n-(mixed01) <= (2/pi) int sqrt(q_-)";
        e.status = CheckStatus::skipped;
        e.note = "hypothesis not met: q is not monotone";
        r.entries.push_back(e);
    }

    // full-line eigenvalue sum bound
    {
        const DiscreteSpectrum line = line_spectrum(prop);
        double s = 0.0;
        for (double e : line.eigenvalues) s += std::sqrt(-e);
        r.entries.push_back(nonstrict_entry("W", "sum sqrt|E(line)| <= int q_- / 2", s,
                                            0.5 * r.inputs.int_qminus, tol));
    }

    // gap-based bounds act on the zero-mean shift; counts below refer to the
    // shifted operator and the report records the shift. Potentials whose gap
    // series decays too slowly for the truncation criterion (jump
    // discontinuities give gamma_n ~ 1/n) get skipped entries, not failures.
    try {
        const GapEstimate g = gap_estimate(p);
        r.nu2x_shift = g.shift;
        const Potential q0 = (g.shift == 0.0) ? p : p.shifted(g.shift);
        Propagator prop0(q0);
        const long n_dir0 = count_negative(prop0, Family::dirichlet);
        const long n_mix0 = count_negative(prop0, Family::mixed01);
        const PeriodicSpectrum ps0 = negative_periodic_part(prop0);
        std::ostringstream note;
        note << "evaluated on q - " << g.shift << " (zero mean)";

        auto tag = [&](ReportEntry e) {
            e.note = note.str();
            r.entries.push_back(std::move(e));
        };
        tag(nonstrict_entry("nu2x", "(n-(periodic) - 1)/2 <= n-(dirichlet)",
                            0.5 * (ps0.negatives - 1.0), static_cast<double>(n_dir0), tol));
        tag(nonstrict_entry("nu2x", "n-(dirichlet) <= n-(mixed01)", static_cast<double>(n_dir0),
                            static_cast<double>(n_mix0), tol));
        tag(nonstrict_entry("nu2x", "n-(mixed01) <= 2 gamma max(1, gamma^(1/3))",
                            static_cast<double>(n_mix0), g.rhs_2gamma, tol));
        tag(nonstrict_entry("nu2x", "sum sqrt|mu| <= 2 gamma max(1, gamma^(1/3))",
                            sum_sqrt_dirichlet(prop0), g.rhs_2gamma, tol));
        tag(nonstrict_entry("nu2x", "half band-edge sqrt sum <= 2 gamma max(1, gamma^(1/3))",
                            half_sum_sqrt_edges(ps0), g.rhs_2gamma, tol));

        // two-sided norm/gap inequalities: the gamma upper bound is strict
        // verification; the lower bound is one-sided under truncation and is
        // reported as consistency, never as a failure
        tag(nonstrict_entry("esg1", "gamma <= 2 |q| max(1, |q|^(1/3))", g.gamma, g.rhs_2norm,
                            tol));
        ReportEntry lower;
        lower.theorem = "esg1";
        lower.instance = "|q| <= 2 gamma max(1, gamma^(1/3))";
        lower.left = g.norm_q;
        lower.right = g.rhs_2gamma;
        lower.margin = lower.right - lower.left;
        lower.tolerance = tol;
        lower.status = g.lower_consistent ? CheckStatus::pass : CheckStatus::degenerate;
        std::ostringstream lnote;
        lnote << (g.lower_consistent ? "consistent" : "not decidable") << " with gamma truncated at "
              << g.n_used << " gaps (tail criterion " << (g.tail_ok ? "met" : "not met") << ")";
        lower.note = lnote.str();
        r.entries.push_back(lower);
    } catch (const ConvergenceFailure& err) {
        for (const char* inst : {"nu2x chain", "sum bounds vs gamma", "two-sided norm/gap"}) {
            ReportEntry e;
            e.theorem = (inst[0] == 't') ? "esg1" : "nu2x";
            e.instance = inst;
            e.status = CheckStatus::skipped;
            e.note = err.what();
            r.entries.push_back(e);
        }
    }
    return r;
}

} // namespace spectral
