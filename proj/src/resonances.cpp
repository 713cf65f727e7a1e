#include "spectral/resonances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spectral/errors.hpp"

namespace spectral {
namespace {

constexpr double kPi = std::numbers::pi;

Complex scaled_psi(const Propagator& prop, Complex k) {
    const TransferMatrix m = prop.matrix(k * k);
    return m.dy2 - Complex(0.0, 1.0) * k * m.y2;
}

// Phase increment along one boundary edge, refined until each sample step
// turns by less than pi/2 so the principal-branch sum tracks the true
// continuous argument. near_zero is set when a sample falls close to a zero
// relative to the edge's magnitude scale.
double edge_winding(const Propagator& prop, Complex a, Complex b, int depth, double scale,
                    bool& near_zero) {
    const Complex fa = scaled_psi(prop, a);
    const Complex fb = scaled_psi(prop, b);
    if (std::abs(fa) < 1e-12 * scale || std::abs(fb) < 1e-12 * scale) {
        near_zero = true;
        return 0.0;
    }
    const double d = std::arg(fb / fa);
    if (std::abs(d) < kPi / 2 || depth <= 0) return d;
    const Complex mid = 0.5 * (a + b);
    return edge_winding(prop, a, mid, depth - 1, scale, near_zero) +
           edge_winding(prop, mid, b, depth - 1, scale, near_zero);
}

double boundary_scale(const Propagator& prop, const Rect& r) {
    double s = 0.0;
    const Complex c[4] = {{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}};
    for (const Complex& k : c) s = std::max(s, std::abs(scaled_psi(prop, k)));
    return std::max(s, 1e-300);
}

long winding_count(const Propagator& prop, Rect r, unsigned jitter_seed) {
    for (int attempt = 0; attempt < 7; ++attempt) {
        bool near_zero = false;
        const double scale = boundary_scale(prop, r);
        const Complex c[5] = {{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1},
                              {r.x0, r.y0}};
        double total = 0.0;
        const int base = 8; // each edge starts split into 2^3 segments
        for (int e = 0; e < 4 && !near_zero; ++e) {
            for (int s = 0; s < base && !near_zero; ++s) {
                const Complex a = c[e] + (c[e + 1] - c[e]) * (double(s) / base);
                const Complex b = c[e] + (c[e + 1] - c[e]) * (double(s + 1) / base);
                total += edge_winding(prop, a, b, 26, scale, near_zero);
            }
        }
        if (!near_zero) {
            const double turns = total / (2.0 * kPi);
            const long n = std::lround(turns);
            if (std::abs(turns - n) < 0.25) return n;
        }
        // grow the rectangle slightly; deterministic in the attempt number
        const double bump = (1.7e-6 + 2.9e-6 * attempt) *
                            (1.0 + std::max(r.width(), r.height())) *
                            (1.0 + 0.13 * ((jitter_seed >> attempt) & 3u));
        r = {r.x0 - bump, r.x1 + bump, r.y0 - bump, r.y1 + bump};
    }
    std::ostringstream os;
    os << "winding count did not settle on rectangle [" << r.x0 << ", " << r.x1 << "] x [" << r.y0
       << ", " << r.y1 << "]";
    throw WindingAmbiguity(os.str());
}

// Newton refinement of an isolated zero from the box centre; the derivative
// of an analytic function equals its real-direction difference quotient.
bool newton_refine(const Propagator& prop, const Rect& box, Complex& k, double& residual) {
    Complex x(0.5 * (box.x0 + box.x1), 0.5 * (box.y0 + box.y1));
    const double diag = std::hypot(box.width(), box.height());
    for (int it = 0; it < 60; ++it) {
        const Complex f = scaled_psi(prop, x);
        const double delta = 1e-7 * (1.0 + std::abs(x));
        const Complex d =
            (scaled_psi(prop, x + delta) - scaled_psi(prop, x - delta)) / (2.0 * delta);
        if (std::abs(d) == 0.0) return false;
        const Complex step = f / d;
        x -= step;
        if (x.real() < box.x0 - diag || x.real() > box.x1 + diag || x.imag() < box.y0 - diag ||
            x.imag() > box.y1 + diag)
            return false;
        if (std::abs(step) <= 1e-13 * (1.0 + std::abs(x))) break;
    }
    // the zero counted in this box must be this box's zero, not a neighbour's;
    // allow only the slack the boundary auto-perturbation can introduce
    const double margin = 1e-4 * (1.0 + std::max(box.width(), box.height()));
    if (x.real() < box.x0 - margin || x.real() > box.x1 + margin || x.imag() < box.y0 - margin ||
        x.imag() > box.y1 + margin)
        return false;
    const double scale = 1.0 + std::abs(scaled_psi(prop, x + Complex(0.05, 0.05))) +
                         std::abs(scaled_psi(prop, x - Complex(0.05, 0.05)));
    residual = std::abs(scaled_psi(prop, x)) / scale;
    k = x;
    return residual < 1e-6;
}

void subdivide(const Propagator& prop, const Rect& box, long count, unsigned jitter_seed,
               std::vector<ResonanceEntry>& out) {
    if (count <= 0) return;
    const double size = std::max(box.width(), box.height());
    if (count == 1) {
        Complex k;
        double residual = 0.0;
        if (newton_refine(prop, box, k, residual)) {
            ResonanceEntry e;
            e.k = k;
            e.multiplicity = 1;
            e.residual = residual;
            out.push_back(e);
            return;
        }
    }
    if (size <= 1e-6) {
        // cluster that never separated: report the centre with the winding
        // count as multiplicity
        ResonanceEntry e;
        e.k = Complex(0.5 * (box.x0 + box.x1), 0.5 * (box.y0 + box.y1));
        e.multiplicity = static_cast<int>(count);
        const double scale = 1.0 + std::abs(scaled_psi(prop, e.k + Complex(0.05, 0.05)));
        e.residual = std::abs(scaled_psi(prop, e.k)) / scale;
        out.push_back(e);
        return;
    }
    // split off-centre so zeros sitting exactly on symmetric lines (the
    // imaginary axis in particular) do not land on child boundaries
    const double fx = 0.5 + 0.0137 * (1 + (jitter_seed & 1u));
    const double fy = 0.5 + 0.0119 * (1 + ((jitter_seed >> 1) & 1u));
    const double xm = box.x0 + box.width() * fx;
    const double ym = box.y0 + box.height() * fy;
    const Rect quads[4] = {{box.x0, xm, box.y0, ym},
                           {xm, box.x1, box.y0, ym},
                           {box.x0, xm, ym, box.y1},
                           {xm, box.x1, ym, box.y1}};
    long used = 0;
    for (int i = 0; i < 4; ++i) {
        const long c = winding_count(prop, quads[i], jitter_seed + i + 1);
        used += c;
        subdivide(prop, quads[i], c, jitter_seed * 4u + i + 1, out);
    }
    if (used != count) {
        std::ostringstream os;
        os << "child counts " << used << " != parent count " << count << " at box [" << box.x0
           << ", " << box.x1 << "] x [" << box.y0 << ", " << box.y1 << "]";
        throw WindingAmbiguity(os.str());
    }
}

} // namespace

long count_zeros(const Propagator& prop, Rect rect, unsigned jitter_seed) {
    return winding_count(prop, rect, jitter_seed);
}

long count_zeros(const Potential& p, Rect rect, unsigned jitter_seed) {
    Propagator prop(p);
    return count_zeros(prop, rect, jitter_seed);
}

std::vector<ResonanceEntry> ResonanceSet::axis_zeros() const {
    std::vector<ResonanceEntry> out;
    for (const auto& e : zeros)
        if (e.on_axis) out.push_back(e);
    return out;
}

ResonanceSet find_resonances(const Propagator& prop, Rect rect, unsigned jitter_seed) {
    if (rect.y0 > rect.y1 || rect.x0 > rect.x1)
        throw std::invalid_argument("find_resonances: malformed rectangle");
    ResonanceSet rs;
    rs.region = rect;
    rs.total_count = winding_count(prop, rect, jitter_seed);
    std::vector<ResonanceEntry> found;
    subdivide(prop, rect, rs.total_count, jitter_seed + 17u, found);

    // dedicated 1-d scan of the axis segment: the scaled function is real on
    // i R and sign changes locate the odd-order zeros directly
    std::vector<double> axis_roots;
    if (rect.x0 < 0.0 && rect.x1 > 0.0 && rect.y0 < 0.0) {
        const double t_hi = -rect.y0;
        const double t_lo = std::max(0.0, -rect.y1);
        auto g = [&](double t) { return scaled_psi_axis(prop, -t); }; // k = -i t
        const double step0 = 1e-2;
        double prev_t = t_lo + 1e-9;
        double prev = g(prev_t);
        for (double t = prev_t + step0; t <= t_hi + step0; t += step0) {
            const double cur = g(std::min(t, t_hi));
            if ((cur < 0.0) != (prev < 0.0)) {
                double a = prev_t, b = std::min(t, t_hi), fa = prev;
                while (b - a > 1e-13 * (1.0 + b)) {
                    const double mid = 0.5 * (a + b);
                    const double fm = g(mid);
                    if (fm == 0.0) {
                        a = b = mid;
                        break;
                    }
                    if ((fm < 0.0) == (fa < 0.0)) {
                        a = mid;
                        fa = fm;
                    } else {
                        b = mid;
                    }
                }
                axis_roots.push_back(0.5 * (a + b));
            }
            prev = cur;
            prev_t = std::min(t, t_hi);
        }
    }

    // merge: a 2-d zero within pairing distance of an axis root is the same
    // zero; otherwise keep both views
    std::vector<bool> matched(axis_roots.size(), false);
    for (auto& e : found) {
        const double pair_tol = 1e-8 * (1.0 + std::abs(e.k));
        e.on_axis = std::abs(e.k.real()) <= pair_tol;
        for (std::size_t i = 0; i < axis_roots.size(); ++i) {
            if (std::abs(e.k - Complex(0.0, -axis_roots[i])) < 1e-6 * (1.0 + axis_roots[i])) {
                e.k = Complex(0.0, -axis_roots[i]);
                e.on_axis = true;
                matched[i] = true;
            }
        }
    }
    for (std::size_t i = 0; i < axis_roots.size(); ++i) {
        if (matched[i]) continue;
        ResonanceEntry e;
        e.k = Complex(0.0, -axis_roots[i]);
        e.multiplicity = 1;
        e.on_axis = true;
        const double scale = 1.0 + std::abs(scaled_psi_axis(prop, -(axis_roots[i] + 0.05)));
        e.residual = std::abs(scaled_psi_axis(prop, -axis_roots[i])) / scale;
        found.push_back(e);
    }

    // annotate axis zeros with the momentum interval of the half-line
    // Dirichlet bound states and the bracketing eigenvalue pair
    const long m = count_negative(prop, Family::mixed01);
    if (m > 0) {
        const DiscreteSpectrum dir = halfline_dirichlet_spectrum(prop);
        const SpectrumTable mu =
            interval_eigenvalues(prop, Family::dirichlet, static_cast<int>(m));
        const SpectrumTable tau =
            interval_eigenvalues(prop, Family::mixed01, static_cast<int>(m) + 1);
        for (auto& e : found) {
            if (!e.on_axis) continue;
            const double r = -e.k.imag();
            if (r < 0.0 || r > dir.momenta.front()) continue;
            long j = 0; // interval index: number of momenta strictly above r
            for (double tj : dir.momenta)
                if (tj > r) ++j;
            if (j < 1 || j > m) continue;
            e.interval_index = static_cast<int>(j);
            e.bracket_lo = mu.entries[j - 1].value;
            e.bracket_hi = tau.entries[j].value;
        }
    }

    std::sort(found.begin(), found.end(), [](const ResonanceEntry& a, const ResonanceEntry& b) {
        if (a.k.imag() != b.k.imag()) return a.k.imag() < b.k.imag();
        return a.k.real() < b.k.real();
    });
    rs.zeros = std::move(found);
    return rs;
}

ResonanceSet find_resonances(const Potential& p, Rect rect, unsigned jitter_seed) {
    Propagator prop(p);
    return find_resonances(prop, rect, jitter_seed);
}

std::vector<ReportEntry> check_localization(const Propagator& prop, const ResonanceSet& rset,
                                            double tol) {
    std::vector<ReportEntry> out;
    const long m = count_negative(prop, Family::mixed01);
    if (m == 0) return out; // no bound states, no momentum intervals

    const DiscreteSpectrum dir = halfline_dirichlet_spectrum(prop);
    const SpectrumTable mu = interval_eigenvalues(prop, Family::dirichlet, static_cast<int>(m));
    const SpectrumTable tau =
        interval_eigenvalues(prop, Family::mixed01, static_cast<int>(m) + 1);

    for (const auto& e : rset.zeros) {
        if (!e.on_axis || e.interval_index < 1) continue;
        const long j = e.interval_index;
        const double ksq = -e.k.imag() * e.k.imag() * 1.0; // k = -ir gives k^2 = -r^2
        std::ostringstream lhs, rhs;
        lhs << "mu_" << j << " < k^2 at axis zero r=" << -e.k.imag();
        rhs << "k^2 < tau_" << j + 1 << " at axis zero r=" << -e.k.imag();
        out.push_back(strict_entry("D2r", lhs.str(), mu.entries[j - 1].value, ksq, tol));
        out.push_back(strict_entry("D2r", rhs.str(), ksq, tau.entries[j].value, tol));
    }

    // parity per momentum interval, only meaningful when the whole axis
    // segment [-i t_1, 0] lies inside the searched region
    const double t1 = dir.momenta.front();
    const bool covered = rset.region.x0 < 0.0 && rset.region.x1 > 0.0 && rset.region.y0 <= -t1 &&
                         rset.region.y1 >= 0.0;
    if (!covered) return out;
    std::vector<long> per_interval(m + 1, 0);
    for (const auto& e : rset.zeros) {
        if (!e.on_axis) continue;
        const double r = -e.k.imag();
        if (r > t1) continue;
        long j = 0;
        for (double tj : dir.momenta)
            if (tj > r) ++j;
        if (j >= 1 && j <= m) per_interval[j] += e.multiplicity;
    }
    for (long j = 1; j <= m; ++j) {
        std::ostringstream inst;
        inst << "zero count on interval " << j << " is " << per_interval[j];
        ReportEntry e;
        e.theorem = "cond-J";
        e.instance = inst.str();
        e.left = static_cast<double>(per_interval[j]);
        e.right = (j < m) ? 1.0 : 0.0;
        e.margin = 0.0;
        e.tolerance = 0.0;
        const bool ok = (j < m) ? (per_interval[j] >= 1 && per_interval[j] % 2 == 1)
                                : (per_interval[j] % 2 == 0);
        e.status = ok ? CheckStatus::pass : CheckStatus::fail;
        e.note = (j < m) ? "odd count >= 1 required" : "even count >= 0 required";
        out.push_back(e);
    }
    return out;
}

std::vector<ReportEntry> check_localization(const Potential& p, const ResonanceSet& rset,
                                            double tol) {
    Propagator prop(p);
    return check_localization(prop, rset, tol);
}

} // namespace spectral
