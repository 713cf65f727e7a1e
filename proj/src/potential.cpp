#include "spectral/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spectral/errors.hpp"
#include "spectral/quadrature.hpp"

namespace spectral {
namespace {

double poly_eval(const std::array<double, 4>& c, double s) {
    return c[0] + s * (c[1] + s * (c[2] + s * c[3]));
}

// ∫_0^s poly
double poly_antideriv(const std::array<double, 4>& c, double s) {
    return s * (c[0] + s * (c[1] / 2 + s * (c[2] / 3 + s * c[3] / 4)));
}

// ∫_0^s t * poly(t) dt
double poly_moment_antideriv(const std::array<double, 4>& c, double s) {
    return s * s * (c[0] / 2 + s * (c[1] / 3 + s * (c[2] / 4 + s * c[3] / 5)));
}

// ∫_0^s poly(t)^2 dt
double poly_square_antideriv(const std::array<double, 4>& c, double s) {
    std::array<double, 7> sq{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) sq[i + j] += c[i] * c[j];
    double acc = 0.0;
    for (int d = 6; d >= 0; --d) acc = acc * s + sq[d] / (d + 1);
    return acc * s;
}

// Real roots of the cubic on (0, w), isolated on monotone pieces of the
// derivative and refined by bisection. Endpoint roots are excluded; sign
// segments are classified from midpoints afterwards.
void poly_roots_inside(const std::array<double, 4>& c, double w, std::vector<double>& out) {
    std::vector<double> knots{0.0, w};
    const double a = 3.0 * c[3], b = 2.0 * c[2], lin = c[1];
    if (a != 0.0) {
        const double disc = b * b - 4.0 * a * lin;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            for (double r : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)})
                if (r > 0.0 && r < w) knots.push_back(r);
        }
    } else if (b != 0.0) {
        const double r = -lin / b;
        if (r > 0.0 && r < w) knots.push_back(r);
    }
    std::sort(knots.begin(), knots.end());
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        double lo = knots[i], hi = knots[i + 1];
        double flo = poly_eval(c, lo), fhi = poly_eval(c, hi);
        if (flo == 0.0 || fhi == 0.0) continue; // segment boundary roots handled by neighbours
        if ((flo < 0.0) == (fhi < 0.0)) continue;
        for (int it = 0; it < 100 && hi - lo > 1e-17 * (1.0 + w); ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = poly_eval(c, mid);
            if (fm == 0.0) {
                lo = hi = mid;
                break;
            }
            ((fm < 0.0) == (flo < 0.0) ? lo : hi) = mid;
            if (lo == hi) break;
            flo = poly_eval(c, lo);
        }
        const double r = 0.5 * (lo + hi);
        if (r > 0.0 && r < w) out.push_back(r);
    }
}

// Extrema candidates of the cubic on [0, w]: endpoints plus interior
// stationary points.
void extrema_candidates(const std::array<double, 4>& c, double w, std::vector<double>& s_out) {
    s_out.assign({0.0, w});
    const double a = 3.0 * c[3], b = 2.0 * c[2], lin = c[1];
    if (a != 0.0) {
        const double disc = b * b - 4.0 * a * lin;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            for (double r : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)})
                if (r > 0.0 && r < w) s_out.push_back(r);
        }
    } else if (b != 0.0) {
        const double r = -lin / b;
        if (r > 0.0 && r < w) s_out.push_back(r);
    }
}

// Composition P(alpha + beta*t) for a cubic, expanded back to coefficients in t.
std::array<double, 4> poly_affine(const std::array<double, 4>& c, double alpha, double beta) {
    std::array<double, 4> out{};
    // binomial expansion of (alpha + beta t)^j
    double apow[4] = {1.0, alpha, alpha * alpha, alpha * alpha * alpha};
    double bpow[4] = {1.0, beta, beta * beta, beta * beta * beta};
    static const int binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i <= j; ++i) out[i] += c[j] * binom[j][i] * apow[j - i] * bpow[i];
    return out;
}

} // namespace

Potential::Potential(PotentialKind kind, std::vector<double> breakpoints,
                     std::vector<std::array<double, 4>> coeffs)
    : kind_(kind), breakpoints_(std::move(breakpoints)), coeffs_(std::move(coeffs)) {
    if (breakpoints_.size() < 2) throw ParseError("breakpoints", "need at least two entries");
    if (breakpoints_.front() != 0.0) throw ParseError("breakpoints", "grid must start at 0");
    if (breakpoints_.back() != 1.0) throw ParseError("breakpoints", "grid must end at 1");
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
        if (!(breakpoints_[i] < breakpoints_[i + 1]))
            throw ParseError("breakpoints", "grid must be strictly increasing");
    for (double b : breakpoints_)
        if (!std::isfinite(b)) throw ParseError("breakpoints", "entries must be finite");
    if (coeffs_.size() + 1 != breakpoints_.size())
        throw ParseError(kind_ == PotentialKind::piecewise_constant ? "values" : "coeffs",
                         "cell count must match breakpoint count minus one");
    for (const auto& c : coeffs_)
        for (double v : c)
            if (!std::isfinite(v))
                throw ParseError(kind_ == PotentialKind::piecewise_constant ? "values" : "coeffs",
                                 "entries must be finite");
}

Potential Potential::piecewise_constant(std::vector<double> breakpoints,
                                        const std::vector<double>& values) {
    std::vector<std::array<double, 4>> coeffs(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) coeffs[i] = {values[i], 0.0, 0.0, 0.0};
    return Potential(PotentialKind::piecewise_constant, std::move(breakpoints), std::move(coeffs));
}

Potential Potential::piecewise_poly(std::vector<double> breakpoints,
                                    std::vector<std::array<double, 4>> coeffs) {
    return Potential(PotentialKind::piecewise_poly, std::move(breakpoints), std::move(coeffs));
}

Potential Potential::constant(double value) {
    return piecewise_constant({0.0, 1.0}, {value});
}

bool Potential::cell_is_constant(std::size_t i) const {
    const auto& c = coeffs_[i];
    return c[1] == 0.0 && c[2] == 0.0 && c[3] == 0.0;
}

bool Potential::all_cells_constant() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (!cell_is_constant(i)) return false;
    return true;
}

double Potential::operator()(double x) const {
    if (x < 0.0 || x > 1.0) return 0.0;
    // right-limit at breakpoints; x = 1 belongs to the last cell
    std::size_t i = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) -
                    breakpoints_.begin();
    if (i == 0) return 0.0;
    std::size_t cell = std::min(i - 1, coeffs_.size() - 1);
    return poly_eval(coeffs_[cell], x - breakpoints_[cell]);
}

double Potential::integral(double a, double b) const {
    a = std::max(a, 0.0);
    b = std::min(b, 1.0);
    if (!(a < b)) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const double lo = std::max(a, breakpoints_[i]);
        const double hi = std::min(b, breakpoints_[i + 1]);
        if (!(lo < hi)) continue;
        acc += poly_antideriv(coeffs_[i], hi - breakpoints_[i]) -
               poly_antideriv(coeffs_[i], lo - breakpoints_[i]);
    }
    return acc;
}

double Potential::min_value() const {
    double m = std::numeric_limits<double>::infinity();
    std::vector<double> cand;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        extrema_candidates(coeffs_[i], cell_width(i), cand);
        for (double s : cand) m = std::min(m, poly_eval(coeffs_[i], s));
    }
    return m;
}

double Potential::max_value() const {
    double m = -std::numeric_limits<double>::infinity();
    std::vector<double> cand;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        extrema_candidates(coeffs_[i], cell_width(i), cand);
        for (double s : cand) m = std::max(m, poly_eval(coeffs_[i], s));
    }
    return m;
}

double Potential::max_qminus() const { return std::max(0.0, -min_value()); }

double Potential::l1_norm() const {
    double acc = 0.0;
    std::vector<double> roots;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const auto& c = coeffs_[i];
        const double w = cell_width(i);
        roots.assign({0.0, w});
        poly_roots_inside(c, w, roots);
        std::sort(roots.begin(), roots.end());
        for (std::size_t j = 0; j + 1 < roots.size(); ++j) {
            const double piece = poly_antideriv(c, roots[j + 1]) - poly_antideriv(c, roots[j]);
            acc += std::abs(piece);
        }
    }
    return acc;
}

Potential Potential::shifted(double eps) const {
    auto coeffs = coeffs_;
    for (auto& c : coeffs) c[0] -= eps;
    return Potential(kind_, breakpoints_, std::move(coeffs));
}

Potential Potential::even_rescaled() const {
    const std::size_t m = coeffs_.size();
    std::vector<double> bp;
    std::vector<std::array<double, 4>> coeffs;
    bp.reserve(2 * m + 1);
    coeffs.reserve(2 * m);
    // left half: u in [(1-x_{i+1})/2, (1-x_i)/2] maps to x = 1 - 2u in cell i
    for (std::size_t i = m; i-- > 0;) {
        bp.push_back(0.5 * (1.0 - breakpoints_[i + 1]));
        // local coordinate: x - x_i = (x_{i+1} - x_i) - 2 t
        auto c = poly_affine(coeffs_[i], cell_width(i), -2.0);
        for (double& v : c) v *= 4.0;
        coeffs.push_back(c);
    }
    // right half: u in [(1+x_i)/2, (1+x_{i+1})/2] maps to x = 2u - 1
    for (std::size_t i = 0; i < m; ++i) {
        bp.push_back(0.5 * (1.0 + breakpoints_[i]));
        auto c = poly_affine(coeffs_[i], 0.0, 2.0);
        for (double& v : c) v *= 4.0;
        coeffs.push_back(c);
    }
    bp.push_back(1.0);
    bp.front() = 0.0;
    return Potential(kind_, std::move(bp), std::move(coeffs));
}

PotentialFunctionals Potential::functionals() const {
    PotentialFunctionals f;
    double int_sq = 0.0;
    std::vector<double> seg;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const auto& c = coeffs_[i];
        const double lo = breakpoints_[i];
        const double w = cell_width(i);
        f.int_q += poly_antideriv(c, w);
        int_sq += poly_square_antideriv(c, w);
        // split the cell at sign changes before handling q_-
        seg.assign({0.0, w});
        poly_roots_inside(c, w, seg);
        std::sort(seg.begin(), seg.end());
        for (std::size_t j = 0; j + 1 < seg.size(); ++j) {
            const double s0 = seg[j], s1 = seg[j + 1];
            if (poly_eval(c, 0.5 * (s0 + s1)) >= 0.0) continue;
            f.int_qminus -= poly_antideriv(c, s1) - poly_antideriv(c, s0);
            f.int_x_qminus -= lo * (poly_antideriv(c, s1) - poly_antideriv(c, s0)) +
                              (poly_moment_antideriv(c, s1) - poly_moment_antideriv(c, s0));
            if (cell_is_constant(i)) {
                f.int_sqrt_qminus += (s1 - s0) * std::sqrt(-c[0]);
            } else {
                f.int_sqrt_qminus += adaptive_integral(
                    [&](double s) { return std::sqrt(std::max(0.0, -poly_eval(c, s))); }, s0, s1,
                    1e-12);
            }
        }
    }
    f.l2_norm = std::sqrt(std::max(0.0, int_sq));

    // Monotonicity is decided exactly on the representation: constant cell
    // derivative sign plus jump direction at interior breakpoints.
    auto monotone_dir = [&](int dir) {
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            const auto& c = coeffs_[i];
            const double w = cell_width(i);
            // derivative is quadratic; its sign on [0, w] is decided at the
            // endpoints and at its vertex
            std::vector<double> cand{0.0, w};
            if (c[3] != 0.0) {
                const double vertex = -c[2] / (3.0 * c[3]);
                if (vertex > 0.0 && vertex < w) cand.push_back(vertex);
            }
            for (double s : cand) {
                const double d = c[1] + s * (2.0 * c[2] + 3.0 * s * c[3]);
                if (dir * d < 0.0) return false;
            }
            if (i + 1 < coeffs_.size()) {
                const double left_end = poly_eval(c, w);
                const double right_start = coeffs_[i + 1][0];
                if (dir * (right_start - left_end) < 0.0) return false;
            }
        }
        return true;
    };
    f.is_monotone = monotone_dir(+1) || monotone_dir(-1);

    f.is_nonpositive = max_value() <= 0.0;
    return f;
}

double DerivedPotential::operator()(double x) const {
    switch (transform) {
        case PotentialTransform::even_extension: return base(std::abs(x));
        case PotentialTransform::periodic_extension:
            return (x >= 1.0 && x <= 2.0) ? base(x - 1.0) : base(x);
        case PotentialTransform::shift: return (x >= 0.0 && x <= 1.0) ? base(x) - eps : 0.0;
    }
    return 0.0;
}

} // namespace spectral
