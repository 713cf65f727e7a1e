#include "spectral/interval.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spectral/errors.hpp"

namespace spectral {
namespace {

constexpr double kPi = std::numbers::pi;

struct StartData {
    double y0, dy0;
};

StartData start_for(Family f) {
    switch (f) {
        case Family::dirichlet:
        case Family::mixed01: return {0.0, 1.0};
        case Family::neumann:
        case Family::mixed10: return {1.0, 0.0};
    }
    return {0.0, 1.0};
}

// Characteristic value of the family at lambda, from the extrapolated real
// endpoint, together with a conditioning scale for residuals.
double char_value(const Propagator& prop, Family f, double lambda, double* scale = nullptr) {
    const StartData s = start_for(f);
    double y, dy;
    prop.real_endpoint(lambda, s.y0, s.dy0, y, dy);
    if (scale) *scale = std::max(1.0, std::abs(y) + std::abs(dy));
    switch (f) {
        case Family::dirichlet:
        case Family::mixed10: return y;
        case Family::mixed01:
        case Family::neumann: return dy;
    }
    return y;
}

std::string family_err(Family f, int ordinal, double a, double b, const char* what) {
    std::ostringstream os;
    os << what << " (family " << to_string(f) << ", index " << ordinal << ", bracket [" << a << ", "
       << b << "])";
    return os.str();
}

} // namespace

std::string to_string(Family f) {
    switch (f) {
        case Family::dirichlet: return "dirichlet";
        case Family::neumann: return "neumann";
        case Family::mixed01: return "mixed01";
        case Family::mixed10: return "mixed10";
    }
    return "?";
}

long eigenvalue_count(const Propagator& prop, Family f, double lambda) {
    const StartData s = start_for(f);
    const RealEndpoint e = prop.count_endpoint(lambda, s.y0, s.dy0);
    // interior zeros of the shooting solution; an exact endpoint hit belongs
    // to the eigenvalue itself and is not counted as "below"
    const bool end_zero = (e.y == 0.0);
    const long interior = e.zeros - (end_zero ? 1 : 0);
    switch (f) {
        case Family::dirichlet:
        case Family::mixed10: return interior;
        case Family::mixed01:
        case Family::neumann: {
            // one more eigenvalue below lambda once the endpoint phase has
            // passed the derivative-vanishing ray of the current half-strip
            const bool extra = end_zero || (((interior % 2 == 0) ? e.dy : -e.dy) < 0.0);
            return interior + (extra ? 1 : 0);
        }
    }
    return interior;
}

namespace {

// Count-bisection isolates the ordinal-th root, sign bisection and two
// safeguarded Newton steps refine it on the extrapolated characteristic
// function. Ordinals are 1-based within the family.
EigenvalueEntry find_eigenvalue(const Propagator& prop, Family f, int ordinal) {
    const Potential& p = prop.potential();
    const double c0 = p.mean();
    const double maxqm = p.max_qminus();
    double lo = -(maxqm + 1.0);
    if (eigenvalue_count(prop, f, lo) != 0)
        throw BracketAnomaly(family_err(f, ordinal, lo, lo, "eigenvalue below the min-max floor"));

    const double idx = (f == Family::dirichlet || f == Family::neumann)
                           ? (f == Family::neumann ? ordinal - 1.0 : ordinal)
                           : ordinal - 0.5;
    const double center = (kPi * idx) * (kPi * idx) + c0;
    double window = 2.0 * kPi * ordinal + 10.0;
    double hi = center + window;
    int guard = 0;
    while (eigenvalue_count(prop, f, hi) < ordinal) {
        window *= 2.0;
        hi = center + window;
        if (++guard > 64)
            throw ConvergenceFailure(family_err(f, ordinal, lo, hi, "search window exhausted"));
    }

    // localize by exact counting
    while (hi - lo > 1e-7 * std::max(1.0, std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        if (eigenvalue_count(prop, f, mid) >= ordinal) hi = mid;
        else lo = mid;
    }

    // establish a sign change of the refined characteristic value; the
    // extrapolated root can sit a scheme-error away from the counted one
    double a = lo, b = hi;
    double ga = char_value(prop, f, a), gb = char_value(prop, f, b);
    double pad = std::max(b - a, 1e-9);
    int expand = 0;
    while ((ga < 0.0) == (gb < 0.0)) {
        a -= pad;
        b += pad;
        pad *= 2.0;
        ga = char_value(prop, f, a);
        gb = char_value(prop, f, b);
        if (++expand > 40)
            throw ConvergenceFailure(family_err(f, ordinal, a, b, "no sign change near count"));
    }
    while (b - a > 1e-12 * std::max(1.0, std::abs(b))) {
        const double mid = 0.5 * (a + b);
        const double gm = char_value(prop, f, mid);
        if (gm == 0.0) {
            a = b = mid;
            break;
        }
        if ((gm < 0.0) == (ga < 0.0)) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
            gb = gm;
        }
    }

    double x = 0.5 * (a + b);
    for (int step = 0; step < 2; ++step) {
        const double delta = 1e-6 * std::max(1.0, std::abs(x));
        const double d = (char_value(prop, f, x + delta) - char_value(prop, f, x - delta)) /
                         (2.0 * delta);
        if (d == 0.0) break;
        const double next = x - char_value(prop, f, x) / d;
        if (next > a && next < b) x = next;
    }

    double scale = 1.0;
    const double g = char_value(prop, f, x, &scale);
    EigenvalueEntry e;
    e.index = (f == Family::neumann) ? ordinal - 1 : ordinal;
    e.value = x;
    e.residual = std::abs(g) / scale;
    return e;
}

} // namespace

SpectrumTable interval_eigenvalues(const Propagator& prop, Family f, int n_max) {
    if (n_max < 1) throw std::invalid_argument("interval_eigenvalues: n_max must be >= 1");
    SpectrumTable t;
    t.family = f;
    t.entries.reserve(n_max);
    for (int k = 1; k <= n_max; ++k) {
        t.entries.push_back(find_eigenvalue(prop, f, k));
        if (k > 1 && !(t.entries[k - 1].value > t.entries[k - 2].value))
            throw BracketAnomaly(family_err(f, k, t.entries[k - 2].value, t.entries[k - 1].value,
                                            "family not strictly increasing"));
    }
    t.negatives = eigenvalue_count(prop, f, 0.0);
    return t;
}

SpectrumTable interval_eigenvalues(const Potential& p, Family f, int n_max) {
    Propagator prop(p);
    return interval_eigenvalues(prop, f, n_max);
}

long count_negative(const Propagator& prop, Family f) { return eigenvalue_count(prop, f, 0.0); }

long count_negative(const Potential& p, Family f) {
    Propagator prop(p);
    return count_negative(prop, f);
}

double PeriodicSpectrum::gap_l2(int n) const {
    const std::size_t m = (n < 0) ? gap_lengths.size()
                                  : std::min<std::size_t>(n, gap_lengths.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += gap_lengths[i] * gap_lengths[i];
    return std::sqrt(acc);
}

namespace {

double discriminant(const Propagator& prop, double lambda) {
    double y1, dy1, y2, dy2;
    prop.real_fundamental(lambda, y1, dy1, y2, dy2);
    return 0.5 * (y1 + dy2);
}

// Edge of the band function sign_n * Delta - 1 inside [lo, hi]. The predicate
// "value >= -band" holds on the gap side of the edge; Newton polishes simple
// edges to full precision and stalls harmlessly at the minimum for nearly
// closed gaps, which the caller then anchors.
double band_edge(const Propagator& prop, double sign_n, double lo, double hi, bool gap_on_right,
                 double band) {
    auto F = [&](double lam) { return sign_n * discriminant(prop, lam) - 1.0; };
    auto on_gap = [&](double lam) { return F(lam) >= -band; };
    const bool lo_gap = on_gap(lo), hi_gap = on_gap(hi);
    if (gap_on_right) {
        if (lo_gap && !hi_gap)
            throw BracketAnomaly("band edge bracket inverted near lambda = " + std::to_string(lo));
        if (!hi_gap)
            throw BracketAnomaly("gap side of band-edge bracket not on gap near lambda = " +
                                 std::to_string(hi));
    } else {
        if (!lo_gap)
            throw BracketAnomaly("gap side of band-edge bracket not on gap near lambda = " +
                                 std::to_string(lo));
    }
    double a = lo, b = hi;
    while (b - a > 1e-13 * std::max(1.0, std::abs(b))) {
        const double mid = 0.5 * (a + b);
        const bool mid_gap = on_gap(mid);
        if (mid_gap == gap_on_right) b = mid;
        else a = mid;
    }
    double x = 0.5 * (a + b);
    for (int it = 0; it < 48; ++it) {
        const double delta = 1e-6 * std::max(1.0, std::abs(x));
        const double d = (F(x + delta) - F(x - delta)) / (2.0 * delta);
        if (d == 0.0) break;
        const double next = x - F(x) / d;
        if (!(next >= lo && next <= hi)) break;
        if (std::abs(next - x) <= 1e-14 * std::max(1.0, std::abs(x))) {
            x = next;
            break;
        }
        x = next;
    }
    if (x < lo || x > hi) x = 0.5 * (a + b);
    return x;
}

PeriodicSpectrum periodic_from_tables(const Propagator& prop, int n_max, const SpectrumTable& mu,
                                      const SpectrumTable& nu) {
    PeriodicSpectrum ps;
    const double band = prop.exact() ? 1e-13 : 1e-10;

    // Bracket every edge with Dirichlet/Neumann eigenvalues only: mu_n and
    // nu_n always lie inside the n-th closed gap, so between consecutive
    // pairs the band function changes side exactly once. The mixed
    // eigenvalues are deliberately not used here; they can stray into
    // neighbouring gaps.

    // lowest edge: simple zero of Delta - 1 between nu_0 and min(mu_1, nu_1)
    {
        const double nu0 = nu.entries[0].value;
        const double right = std::min(mu.entries[0].value, nu.entries[1].value);
        auto F = [&](double lam) { return discriminant(prop, lam) - 1.0; };
        const double fa = F(nu0);
        if (fa <= 0.0) {
            if (fa < -1e-9 * std::max(1.0, std::abs(nu0)))
                throw BracketAnomaly("lowest band edge lies below nu_0");
            ps.lambda0 = nu0; // degenerate touch nu_0 = lambda_0^+
        } else {
            if (F(right) >= 0.0)
                throw BracketAnomaly("lowest band edge bracket has no sign change");
            double a = nu0, b = right;
            while (b - a > 1e-13 * std::max(1.0, std::abs(b))) {
                const double mid = 0.5 * (a + b);
                ((F(mid) > 0.0) ? a : b) = mid;
            }
            double x = 0.5 * (a + b);
            for (int it = 0; it < 8; ++it) {
                const double delta = 1e-6 * std::max(1.0, std::abs(x));
                const double d = (F(x + delta) - F(x - delta)) / (2.0 * delta);
                if (d == 0.0) break;
                const double next = x - F(x) / d;
                if (next <= a || next >= b) break;
                x = next;
            }
            ps.lambda0 = x;
        }
        ps.lambda0_residual = std::abs(F(ps.lambda0));
    }

    for (int n = 1; n <= n_max; ++n) {
        const double sign_n = (n % 2 == 0) ? 1.0 : -1.0;
        const double mun = mu.entries[n - 1].value;
        const double nun = nu.entries[n].value; // nu_n sits at position n (nu_0 first)
        const double inner_lo = std::min(mun, nun), inner_hi = std::max(mun, nun);
        const double outer_lo = (n == 1) ? std::min(ps.lambda0, inner_lo)
                                         : mu.entries[n - 2].value;
        const double outer_hi = mu.entries[n].value;

        double lower = band_edge(prop, sign_n, outer_lo, inner_lo, true, band);
        double upper = band_edge(prop, sign_n, inner_hi, outer_hi, false, band);

        // Below the resolvable separation the quadratic bottom of the gap
        // cannot be split; anchor to the bracketing interval eigenvalues,
        // which the gap always contains.
        const double resolution =
            6.0 * std::sqrt((1.0 + 8.0 * std::abs(upper)) * band);
        PeriodicEdge e;
        e.n = n;
        if (upper - lower < std::max(resolution, 1e-8 * std::max(1.0, std::abs(upper)))) {
            lower = inner_lo;
            upper = inner_hi;
        }
        if (upper - lower < 1e-8 * std::max(1.0, std::abs(upper))) {
            const double anchor = 0.5 * (inner_lo + inner_hi);
            lower = upper = anchor;
            e.closed = true;
        } else {
            e.closed = false;
        }
        e.lower = lower;
        e.upper = upper;
        e.residual = std::max(std::abs(sign_n * discriminant(prop, lower) - 1.0),
                              std::abs(sign_n * discriminant(prop, upper) - 1.0));
        ps.edges.push_back(e);
        ps.gap_lengths.push_back(upper - lower);
    }

    ps.negatives = (ps.lambda0 < 0.0 ? 1 : 0);
    for (const auto& e : ps.edges) {
        if (e.lower < 0.0) ++ps.negatives;
        if (e.upper < 0.0) ++ps.negatives;
    }
    return ps;
}

} // namespace

PeriodicSpectrum periodic_spectrum(const Propagator& prop, int n_max) {
    if (n_max < 1) throw std::invalid_argument("periodic_spectrum: n_max must be >= 1");
    const SpectrumTable mu = interval_eigenvalues(prop, Family::dirichlet, n_max + 1);
    const SpectrumTable nu = interval_eigenvalues(prop, Family::neumann, n_max + 1);
    return periodic_from_tables(prop, n_max, mu, nu);
}

PeriodicSpectrum periodic_spectrum(const Potential& p, int n_max) {
    Propagator prop(p);
    return periodic_spectrum(prop, n_max);
}

const SpectrumTable& SpectraSet::table(Family f) const {
    switch (f) {
        case Family::dirichlet: return dirichlet;
        case Family::neumann: return neumann;
        case Family::mixed01: return mixed01;
        case Family::mixed10: return mixed10;
    }
    return dirichlet;
}

double SpectraSet::value(Family f, int ordinal) const {
    return table(f).entries.at(ordinal - 1).value;
}

SpectraSet compute_spectra(const Propagator& prop, int n_max) {
    SpectraSet s;
    s.dirichlet = interval_eigenvalues(prop, Family::dirichlet, n_max + 1);
    s.neumann = interval_eigenvalues(prop, Family::neumann, n_max + 1);
    s.mixed01 = interval_eigenvalues(prop, Family::mixed01, n_max + 1);
    s.mixed10 = interval_eigenvalues(prop, Family::mixed10, n_max + 1);
    s.periodic = periodic_from_tables(prop, n_max, s.dirichlet, s.neumann);
    return s;
}

std::vector<ReportEntry> check_interlacing(const SpectraSet& s, int n_max, double tol) {
    std::vector<ReportEntry> out;
    auto name = [](const char* fmt, int n) {
        std::ostringstream os;
        os << fmt << n;
        return os.str();
    };
    out.push_back(nonstrict_entry("bx", "nu_0 <= lambda_0^+", s.value(Family::neumann, 1),
                                  s.periodic.lambda0, tol));
    out.push_back(strict_entry("bx", "lambda_0^+ < min(rho_1, tau_1)", s.periodic.lambda0,
                               std::min(s.value(Family::mixed10, 1), s.value(Family::mixed01, 1)),
                               tol));
    const int edges = static_cast<int>(s.periodic.edges.size());
    for (int n = 1; n <= std::min(n_max, edges); ++n) {
        const auto& e = s.periodic.edges[n - 1];
        const double mun = s.value(Family::dirichlet, n), nun = s.value(Family::neumann, n + 1);
        const double taun = s.value(Family::mixed01, n), rhon = s.value(Family::mixed10, n);
        out.push_back(strict_entry("bx", name("max(rho,tau)_ < lambda^- at n=", n),
                                   std::max(taun, rhon), e.lower, tol));
        out.push_back(nonstrict_entry("bx", name("lambda^- <= min(mu,nu) at n=", n), e.lower,
                                      std::min(mun, nun), tol));
        out.push_back(nonstrict_entry("bx", name("max(mu,nu) <= lambda^+ at n=", n),
                                      std::max(mun, nun), e.upper, tol));
        out.push_back(strict_entry(
            "bx", name("lambda^+ < min(rho,tau) next at n=", n), e.upper,
            std::min(s.value(Family::mixed01, n + 1), s.value(Family::mixed10, n + 1)), tol));
    }
    return out;
}

std::vector<ReportEntry> check_interlacing(const Potential& p, int n_max, double tol) {
    Propagator prop(p);
    return check_interlacing(compute_spectra(prop, n_max), n_max, tol);
}

} // namespace spectral
