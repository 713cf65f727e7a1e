#include "spectral/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "spectral/errors.hpp"

namespace spectral {
namespace {

struct AxisValues {
    double y1, dy1, y2, dy2; // extrapolated endpoint values at lambda = -t^2
};

AxisValues axis_values(const Propagator& prop, double t) {
    AxisValues v{};
    prop.real_fundamental(-t * t, v.y1, v.dy1, v.y2, v.dy2);
    return v;
}

double psi_axis_from(const AxisValues& v, double t) { return v.dy2 + t * v.y2; }
double psi_prime_axis_from(const AxisValues& v, double t) { return -t * v.y1 - v.dy1; }
double wronskian_axis_from(const AxisValues& v, double t) {
    return -t * (v.y1 + v.dy2) - t * t * v.y2 - v.dy1;
}

using AxisFn = double (*)(const AxisValues&, double);

double eval_axis(const Propagator& prop, AxisFn fn, double t) {
    return fn(axis_values(prop, t), t);
}

// conditioning scale of the endpoint data at lambda = -t^2
double axis_scale(const AxisValues& v, double t) {
    const double m = std::max(std::abs(v.y1) + std::abs(v.dy1), std::abs(v.y2) + std::abs(v.dy2));
    return std::max(1.0, (1.0 + std::abs(t)) * m);
}

// Simple bisection + two Newton polish steps for an axis zero inside (ta, tb),
// given values of opposite sign at the ends.
double refine_axis_root(const Propagator& prop, AxisFn fn, double ta, double tb, double fa) {
    double a = ta, b = tb;
    while (b - a > 1e-13 * std::max(1.0, b)) {
        const double mid = 0.5 * (a + b);
        const double fm = eval_axis(prop, fn, mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    double x = 0.5 * (a + b);
    for (int it = 0; it < 2; ++it) {
        const double delta = 1e-7 * (1.0 + std::abs(x));
        const double d =
            (eval_axis(prop, fn, x + delta) - eval_axis(prop, fn, x - delta)) / (2.0 * delta);
        if (d == 0.0) break;
        const double next = x - eval_axis(prop, fn, x) / d;
        if (next > a && next < b) x = next;
    }
    return x;
}

struct CaseSetup {
    SpectrumCase kind;
    AxisFn fn;
};

// Eigenvalue brackets in t = sqrt(-E) from a bracket (e_lo, e_hi) in energy.
struct TBracket {
    double t_lo, t_hi;
};

TBracket to_t_bracket(double e_lo, double e_hi) {
    // E in (e_lo, min(0, e_hi)) maps to t in (sqrt(-min(0,e_hi)), sqrt(-e_lo))
    const double hi = std::min(0.0, e_hi);
    return {std::sqrt(std::max(0.0, -hi)), std::sqrt(-e_lo)};
}

DiscreteSpectrum solve_case(const Propagator& prop, const CaseSetup& setup,
                            const std::vector<TBracket>& brackets, long expected) {
    DiscreteSpectrum out;
    out.kind = setup.kind;
    const Potential& p = prop.potential();
    const double t_top = std::sqrt(p.max_qminus() + 1.0);

    std::vector<double> roots;
    for (const TBracket& br : brackets) {
        if (!(br.t_lo < br.t_hi)) {
            std::ostringstream os;
            os << to_string(setup.kind) << ": empty bracket (" << br.t_lo << ", " << br.t_hi << ")";
            throw BracketAnomaly(os.str());
        }
        // keep strictly inside: the endpoints are roots of other families
        const double eps = 1e-11 * (1.0 + br.t_hi);
        const double a = br.t_lo + eps, b = br.t_hi - eps;
        const double fa = eval_axis(prop, setup.fn, a);
        const double fb = eval_axis(prop, setup.fn, b);
        if ((fa < 0.0) == (fb < 0.0)) {
            std::ostringstream os;
            os << to_string(setup.kind) << ": no sign change in bracket t in (" << br.t_lo << ", "
               << br.t_hi << "), values " << fa << ", " << fb;
            throw BracketAnomaly(os.str());
        }
        roots.push_back(refine_axis_root(prop, setup.fn, a, b, fa));
    }

    // Guard scan: no sign change may occur outside the theorem brackets. The
    // probe grid carries the bracket endpoints so changes cannot straddle a
    // bracket unseen; a surplus change is reported, not repaired.
    {
        std::vector<double> probes{1e-9, t_top};
        const double step = t_top / 512.0;
        for (double t = step; t < t_top; t += step) probes.push_back(t);
        for (const TBracket& br : brackets) {
            const double eps = 1e-9 * (1.0 + br.t_hi);
            probes.push_back(br.t_lo + eps);
            probes.push_back(br.t_hi - eps);
        }
        std::sort(probes.begin(), probes.end());
        auto inside_bracket = [&](double a, double b) {
            for (const TBracket& br : brackets)
                if (a >= br.t_lo && b <= br.t_hi) return true;
            return false;
        };
        double prev_t = probes[0];
        double prev = eval_axis(prop, setup.fn, prev_t);
        for (std::size_t i = 1; i < probes.size(); ++i) {
            const double cur = eval_axis(prop, setup.fn, probes[i]);
            if ((cur < 0.0) != (prev < 0.0) && !inside_bracket(prev_t, probes[i])) {
                std::ostringstream os;
                os << to_string(setup.kind) << ": sign change outside the theorem brackets in t ("
                   << prev_t << ", " << probes[i] << ")";
                throw BracketAnomaly(os.str());
            }
            prev = cur;
            prev_t = probes[i];
        }
    }
    if (static_cast<long>(roots.size()) != expected) {
        std::ostringstream os;
        os << to_string(setup.kind) << ": found " << roots.size() << " bracketed zeros, expected "
           << expected << " from the interval counts";
        throw BracketAnomaly(os.str());
    }

    std::sort(roots.begin(), roots.end(), std::greater<double>()); // deepest first
    for (double t : roots) {
        out.momenta.push_back(t);
        out.eigenvalues.push_back(-t * t);
        const AxisValues v = axis_values(prop, t);
        out.residuals.push_back(std::abs(setup.fn(v, t)) / axis_scale(v, t));
    }

    const AxisValues v0 = axis_values(prop, 0.0);
    out.threshold_resonance =
        std::abs(setup.fn(v0, 0.0)) < 1e-8 * (1.0 + p.l1_norm());
    return out;
}

} // namespace

std::string to_string(SpectrumCase c) {
    switch (c) {
        case SpectrumCase::halfline_dirichlet: return "halfline_dirichlet";
        case SpectrumCase::halfline_neumann: return "halfline_neumann";
        case SpectrumCase::line: return "line";
        case SpectrumCase::line_even: return "line_even";
    }
    return "?";
}

JostEvaluation jost(const Propagator& prop, Complex k) {
    if (!(std::isfinite(k.real()) && std::isfinite(k.imag())))
        throw std::invalid_argument("jost: non-finite k");
    const Complex lambda = k * k;
    const TransferMatrix m = prop.matrix(lambda);
    const Complex I(0.0, 1.0);
    JostEvaluation j;
    j.k = k;
    j.scaled_psi = m.dy2 - I * k * m.y2;
    j.scaled_psi_prime = I * k * m.y1 - m.dy1;
    j.scaled_wronskian = 2.0 * I * k * m.half_trace() + lambda * m.y2 - m.dy1;
    const Complex phase = std::exp(I * k);
    j.psi = phase * j.scaled_psi;
    j.psi_prime = phase * j.scaled_psi_prime;
    j.wronskian = phase * j.scaled_wronskian;
    return j;
}

JostEvaluation jost(const Potential& p, Complex k) {
    Propagator prop(p);
    return jost(prop, k);
}

double scaled_psi_axis(const Propagator& prop, double t) {
    return eval_axis(prop, psi_axis_from, t);
}

double scaled_psi_prime_axis(const Propagator& prop, double t) {
    return eval_axis(prop, psi_prime_axis_from, t);
}

double scaled_wronskian_axis(const Propagator& prop, double t) {
    return eval_axis(prop, wronskian_axis_from, t);
}

DiscreteSpectrum halfline_dirichlet_spectrum(const Propagator& prop) {
    const long m = count_negative(prop, Family::mixed01);
    std::vector<TBracket> brackets;
    if (m > 0) {
        const SpectrumTable tau = interval_eigenvalues(prop, Family::mixed01, static_cast<int>(m));
        const SpectrumTable mu = interval_eigenvalues(prop, Family::dirichlet, static_cast<int>(m));
        for (long j = 1; j <= m; ++j)
            brackets.push_back(
                to_t_bracket(tau.entries[j - 1].value, mu.entries[j - 1].value));
    }
    return solve_case(prop, {SpectrumCase::halfline_dirichlet, psi_axis_from}, brackets, m);
}

DiscreteSpectrum halfline_neumann_spectrum(const Propagator& prop) {
    const long n = count_negative(prop, Family::neumann);
    std::vector<TBracket> brackets;
    if (n > 0) {
        const SpectrumTable nu = interval_eigenvalues(prop, Family::neumann, static_cast<int>(n));
        const SpectrumTable rho = interval_eigenvalues(prop, Family::mixed10, static_cast<int>(n));
        for (long j = 1; j <= n; ++j)
            brackets.push_back(to_t_bracket(nu.entries[j - 1].value, rho.entries[j - 1].value));
    }
    return solve_case(prop, {SpectrumCase::halfline_neumann, psi_prime_axis_from}, brackets, n);
}

DiscreteSpectrum line_spectrum(const Propagator& prop) {
    const DiscreteSpectrum tilde = halfline_neumann_spectrum(prop);
    const DiscreteSpectrum dir = halfline_dirichlet_spectrum(prop);
    const long n = tilde.size();
    std::vector<TBracket> brackets;
    for (long j = 0; j < n; ++j) {
        const double lo = tilde.eigenvalues[j];
        const double hi = (j < dir.size()) ? dir.eigenvalues[j] : 0.0;
        brackets.push_back(to_t_bracket(lo, hi));
    }
    return solve_case(prop, {SpectrumCase::line, wronskian_axis_from}, brackets, n);
}

DiscreteSpectrum halfline_dirichlet_spectrum(const Potential& p) {
    Propagator prop(p);
    return halfline_dirichlet_spectrum(prop);
}

DiscreteSpectrum halfline_neumann_spectrum(const Potential& p) {
    Propagator prop(p);
    return halfline_neumann_spectrum(prop);
}

DiscreteSpectrum line_spectrum(const Potential& p) {
    Propagator prop(p);
    return line_spectrum(prop);
}

EvenLineResult even_line_spectrum(const Potential& p, int factorization_grid, double grid_t_max) {
    EvenLineResult r;
    Propagator prop(p);
    const DiscreteSpectrum dir = halfline_dirichlet_spectrum(prop);
    const DiscreteSpectrum neu = halfline_neumann_spectrum(prop);

    r.merged.kind = SpectrumCase::line_even;
    r.merged.threshold_resonance = dir.threshold_resonance || neu.threshold_resonance;
    {
        std::vector<std::pair<double, double>> all; // (E, residual)
        for (long j = 0; j < dir.size(); ++j) all.emplace_back(dir.eigenvalues[j], dir.residuals[j]);
        for (long j = 0; j < neu.size(); ++j) all.emplace_back(neu.eigenvalues[j], neu.residuals[j]);
        std::sort(all.begin(), all.end());
        for (auto& [e, res] : all) {
            r.merged.eigenvalues.push_back(e);
            r.merged.momenta.push_back(std::sqrt(-e));
            r.merged.residuals.push_back(res);
        }
    }
    r.n_even = r.merged.size();

    // independent route: the even extension moved to [0, 2] and pulled back to
    // the unit interval multiplies energies by 4 and momenta by 2
    const Potential even4 = p.even_rescaled();
    Propagator prop_even(even4);
    const DiscreteSpectrum scaled = line_spectrum(prop_even);
    r.independent.kind = SpectrumCase::line_even;
    r.independent.threshold_resonance = scaled.threshold_resonance;
    for (long j = 0; j < scaled.size(); ++j) {
        r.independent.eigenvalues.push_back(scaled.eigenvalues[j] / 4.0);
        r.independent.momenta.push_back(scaled.momenta[j] / 2.0);
        r.independent.residuals.push_back(scaled.residuals[j]);
    }

    // Hausdorff distance between the two finite sets
    auto one_sided = [](const std::vector<double>& a, const std::vector<double>& b) {
        double worst = 0.0;
        for (double x : a) {
            double best = std::numeric_limits<double>::infinity();
            for (double y : b) best = std::min(best, std::abs(x - y));
            worst = std::max(worst, best);
        }
        return worst;
    };
    if (r.merged.eigenvalues.empty() && r.independent.eigenvalues.empty()) r.hausdorff = 0.0;
    else if (r.merged.eigenvalues.empty() || r.independent.eigenvalues.empty())
        r.hausdorff = std::numeric_limits<double>::infinity();
    else
        r.hausdorff = std::max(one_sided(r.merged.eigenvalues, r.independent.eigenvalues),
                               one_sided(r.independent.eigenvalues, r.merged.eigenvalues));

    // factorization w_e(k) = 2 psi(k) psi'(k) on k = i t:
    // w_e(it) = e^{-2t} W_scaled(2 i t) / 2 and psi psi' = e^{-2t} Psi Psi'
    for (int i = 0; i < factorization_grid; ++i) {
        const double t = -grid_t_max +
                         (2.0 * grid_t_max) * i / std::max(1, factorization_grid - 1);
        const double damp = std::exp(-2.0 * t);
        const double we = damp * scaled_wronskian_axis(prop_even, 2.0 * t) / 2.0;
        const double prod =
            2.0 * damp * scaled_psi_axis(prop, t) * scaled_psi_prime_axis(prop, t);
        r.grid_t.push_back(t);
        r.w_even.push_back(we);
        r.factorization_residual.push_back(std::abs(we - prod));
    }
    return r;
}

} // namespace spectral
