#include "spectral/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "spectral/bounds.hpp"
#include "spectral/corpus.hpp"
#include "spectral/errors.hpp"
#include "spectral/io.hpp"
#include "spectral/oracle.hpp"
#include "spectral/parallel.hpp"
#include "spectral/scattering.hpp"

namespace spectral {
namespace {

std::string idx(const char* stem, long j) {
    std::ostringstream os;
    os << stem << j;
    return os.str();
}

void scattering_entries(const Propagator& prop, const SpectraSet& s, double tol,
                        std::vector<ReportEntry>& out, DiscreteSpectrum& dir_out,
                        DiscreteSpectrum& neu_out, DiscreteSpectrum& line_out) {
    const DiscreteSpectrum dir = halfline_dirichlet_spectrum(prop);
    const DiscreteSpectrum neu = halfline_neumann_spectrum(prop);
    const DiscreteSpectrum line = line_spectrum(prop);
    const long m = dir.size(), n = neu.size();

    out.push_back(integer_entry("D1", "n-(halfline dirichlet) = n-(mixed01)", m,
                                s.mixed01.negatives));
    out.push_back(nonstrict_entry("D1", "n-(dirichlet) <= n-(mixed01)",
                                  static_cast<double>(s.dirichlet.negatives),
                                  static_cast<double>(s.mixed01.negatives), 0.0));
    for (long j = 1; j <= m; ++j) {
        out.push_back(strict_entry("D2", idx("tau < E at j=", j), s.value(Family::mixed01, j),
                                   dir.eigenvalues[j - 1], tol));
        out.push_back(strict_entry("D2", idx("E < mu at j=", j), dir.eigenvalues[j - 1],
                                   s.value(Family::dirichlet, j), tol));
    }
    if (m > 0)
        out.push_back(strict_entry("D2", "E_m < 0", dir.eigenvalues[m - 1], 0.0, tol));

    out.push_back(integer_entry("N1", "n-(halfline neumann) = n-(neumann)", n,
                                s.neumann.negatives));
    for (long j = 1; j <= n; ++j) {
        out.push_back(strict_entry("N2", idx("nu < E~ at j=", j), s.value(Family::neumann, j),
                                   neu.eigenvalues[j - 1], tol));
        out.push_back(strict_entry("N2", idx("E~ < rho at j=", j), neu.eigenvalues[j - 1],
                                   s.value(Family::mixed10, j), tol));
        if (j < n)
            out.push_back(strict_entry("N2", idx("rho < nu at j=", j),
                                       s.value(Family::mixed10, j),
                                       s.value(Family::neumann, j + 1), tol));
    }
    if (n > 0)
        out.push_back(strict_entry("N2", "E~_N < 0", neu.eigenvalues[n - 1], 0.0, tol));

    // interleave and the count dichotomy decided by the sign of tau_N
    for (long j = 1; j <= std::min(m, n); ++j)
        out.push_back(strict_entry("N3", idx("E~ < E at j=", j), neu.eigenvalues[j - 1],
                                   dir.eigenvalues[j - 1], tol));
    for (long j = 1; j < n && j <= m; ++j)
        out.push_back(strict_entry("N3", idx("E < E~ next at j=", j), dir.eigenvalues[j - 1],
                                   neu.eigenvalues[j], tol));
    if (n > 0) {
        const double tau_n = s.value(Family::mixed01, n);
        ReportEntry e;
        e.theorem = "N3";
        e.left = static_cast<double>(m);
        e.tolerance = tol;
        if (tau_n > tol) {
            e.instance = idx("tau_N >= 0 so m = N-1, N=", n);
            e.right = static_cast<double>(n - 1);
            e.margin = e.right - e.left;
            e.status = (m == n - 1) ? CheckStatus::pass : CheckStatus::fail;
        } else if (tau_n < -tol) {
            e.instance = idx("tau_N < 0 so m = N, N=", n);
            e.right = static_cast<double>(n);
            e.margin = e.right - e.left;
            e.status = (m == n) ? CheckStatus::pass : CheckStatus::fail;
        } else {
            e.instance = idx("tau_N at threshold, dichotomy undecided, N=", n);
            e.right = e.left;
            e.status = CheckStatus::degenerate;
        }
        out.push_back(e);
    }

    out.push_back(integer_entry("N1x", "n-(line) = n-(halfline neumann)", line.size(), n));
    for (long j = 1; j <= line.size(); ++j) {
        out.push_back(strict_entry("N2x", idx("nu < E~ at j=", j), s.value(Family::neumann, j),
                                   neu.eigenvalues[j - 1], tol));
        out.push_back(strict_entry("N2x", idx("E~ < E(line) at j=", j), neu.eigenvalues[j - 1],
                                   line.eigenvalues[j - 1], tol));
        if (j <= m)
            out.push_back(strict_entry("N2x", idx("E(line) < E at j=", j),
                                       line.eigenvalues[j - 1], dir.eigenvalues[j - 1], tol));
        if (j <= m && j < n)
            out.push_back(strict_entry("N2x", idx("E < nu at j=", j), dir.eigenvalues[j - 1],
                                       s.value(Family::neumann, j + 1), tol));
    }
    if (line.size() > 0)
        out.push_back(
            strict_entry("N2x", "E(line)_N < 0", line.eigenvalues[line.size() - 1], 0.0, tol));

    dir_out = dir;
    neu_out = neu;
    line_out = line;
}

void even_entries(const Potential& p, const SpectraSet& s, const DiscreteSpectrum& dir,
                  const DiscreteSpectrum& neu, double tol, std::vector<ReportEntry>& out) {
    const EvenLineResult ev = even_line_spectrum(p);
    const long m = dir.size(), n = neu.size();

    out.push_back(integer_entry("ev1", "n_e = N + m", ev.n_even, n + m));
    if (n > 0) {
        const double tau_n = s.value(Family::mixed01, n);
        const long expect = (tau_n >= 0.0) ? 2 * n - 1 : 2 * n;
        ReportEntry e = integer_entry("ev1", idx("count dichotomy, N=", n), ev.n_even, expect);
        if (std::abs(tau_n) <= tol) e.status = CheckStatus::degenerate;
        out.push_back(e);
    }
    out.push_back(nonstrict_entry("ev1", "hausdorff(union, independent)", ev.hausdorff, 1e-7,
                                  0.0));
    double worst = 0.0;
    for (std::size_t i = 0; i < ev.grid_t.size(); ++i)
        worst = std::max(worst,
                         ev.factorization_residual[i] / (1.0 + std::abs(ev.w_even[i])));
    out.push_back(nonstrict_entry("ev1", "factorization residual on k-grid", worst, 1e-8, 0.0));

    // union entries alternate: odd positions from the Neumann case bracketed
    // by (nu_{j-1}, rho_j), even positions from the Dirichlet case by
    // (tau_j, mu_j)
    for (long i = 1; i <= ev.n_even; ++i) {
        const double val = ev.merged.eigenvalues[i - 1];
        const long j = (i + 1) / 2;
        if (i % 2 == 1) {
            out.push_back(strict_entry("ev2", idx("nu < E^e at position ", i),
                                       s.value(Family::neumann, j), val, tol));
            out.push_back(strict_entry("ev2", idx("E^e < rho at position ", i), val,
                                       s.value(Family::mixed10, j), tol));
        } else {
            out.push_back(strict_entry("ev2", idx("tau < E^e at position ", i),
                                       s.value(Family::mixed01, j), val, tol));
            out.push_back(strict_entry("ev2", idx("E^e < mu at position ", i), val,
                                       s.value(Family::dirichlet, j), tol));
        }
    }
}

} // namespace

std::string VerifyOptions::to_json_text() const {
    nlohmann::json j;
    j["n_max"] = n_max;
    j["tol"] = tol;
    j["with_resonances"] = with_resonances;
    j["with_oracle"] = with_oracle;
    j["oracle_n"] = oracle_n;
    j["rect"] = {rect.x0, rect.x1, rect.y0, rect.y1};
    j["jitter_seed"] = jitter_seed;
    return j.dump();
}

VerificationReport verify_potential(const Potential& p, const VerifyOptions& opts) {
    VerificationReport r;
    r.potential_echo = potential_to_json_text(p);
    r.settings_echo = opts.to_json_text();
    try {
        Propagator prop(p);
        const SpectraSet s = compute_spectra(prop, opts.n_max);
        auto bx = check_interlacing(s, opts.n_max, opts.tol);
        r.entries.insert(r.entries.end(), bx.begin(), bx.end());

        DiscreteSpectrum dir, neu, line;
        scattering_entries(prop, s, opts.tol, r.entries, dir, neu, line);
        even_entries(p, s, dir, neu, opts.tol, r.entries);

        if (opts.with_resonances) {
            const ResonanceSet rset = find_resonances(prop, opts.rect, opts.jitter_seed);
            long mult_sum = 0;
            for (const auto& z : rset.zeros) mult_sum += z.multiplicity;
            r.entries.push_back(integer_entry(
                "resonance-total", "sum of multiplicities = boundary winding count", mult_sum,
                rset.total_count));
            auto loc = check_localization(prop, rset, opts.tol);
            r.entries.insert(r.entries.end(), loc.begin(), loc.end());
        }

        const BoundsReport b = check_bounds(p);
        r.entries.insert(r.entries.end(), b.entries.begin(), b.entries.end());

        if (opts.with_oracle) {
            const CrossValidation cv = cross_validate(p, 2e-3, opts.oracle_n);
            r.entries.insert(r.entries.end(), cv.entries.begin(), cv.entries.end());
        }
    } catch (const SolverError& err) {
        ReportEntry e;
        e.theorem = "solver";
        e.instance = "pipeline failure";
        e.status = CheckStatus::fail;
        e.note = err.what();
        r.entries.push_back(e);
    }
    return r;
}

std::vector<VerificationReport> verify_random(std::uint64_t seed, int count,
                                              const VerifyOptions& opts, bool parallel) {
    std::vector<VerificationReport> out(count);
    parallel_for(
        static_cast<std::size_t>(count),
        [&](std::size_t i) {
            out[i] = verify_potential(corpus_potential(seed, i), opts);
        },
        parallel);
    return out;
}

} // namespace spectral
