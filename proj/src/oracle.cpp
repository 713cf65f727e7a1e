#include "spectral/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "spectral/interval.hpp"
#include "spectral/parallel.hpp"
#include "spectral/scattering.hpp"

namespace spectral {
namespace {

// integral of the 2-periodic extension (period 1 pattern repeated on [0, 2])
// over [a, b], tolerating one period of wrap on either side
double integral_periodic(const Potential& p, double a, double b) {
    auto base = [&](double lo, double hi) {
        // q_pi on [0, 2] is q(x) on [0, 1] and q(x - 1) on [1, 2]
        double acc = 0.0;
        acc += p.integral(std::max(lo, 0.0), std::min(hi, 1.0));
        acc += p.integral(std::max(lo, 1.0) - 1.0, std::min(hi, 2.0) - 1.0);
        return acc;
    };
    double acc = 0.0;
    if (a < 0.0) acc += base(a + 2.0, std::min(b, 0.0) + 2.0);
    acc += base(std::max(a, 0.0), std::min(b, 2.0));
    if (b > 2.0) acc += base(std::max(a, 2.0) - 2.0, b - 2.0);
    return acc;
}

} // namespace

DiscretizedOperator DiscretizedOperator::build(const Potential& p, OracleProblem problem,
                                               int grid_n, double box_radius) {
    if (grid_n < 64) throw std::invalid_argument("oracle grid too coarse");
    DiscretizedOperator op;
    op.problem = problem;

    double x_lo = 0.0, length = 1.0;
    bool neumann_left = false, neumann_right = false, periodic = false;
    switch (problem) {
        case OracleProblem::interval_dirichlet: break;
        case OracleProblem::interval_neumann: neumann_left = neumann_right = true; break;
        case OracleProblem::interval_mixed01: neumann_right = true; break;
        case OracleProblem::interval_mixed10: neumann_left = true; break;
        case OracleProblem::periodic: length = 2.0; periodic = true; break;
        case OracleProblem::box_dirichlet: length = box_radius; break;
        case OracleProblem::box_neumann: length = box_radius; neumann_left = true; break;
        case OracleProblem::box_line:
            x_lo = -box_radius;
            length = 2.0 * box_radius;
            break;
    }
    const double h = length / grid_n;
    op.h = h;
    const double c = 1.0 / (h * h);
    const double x_hi = x_lo + length;

    // Exact local average of the potential over the dual cell, clipped to the
    // domain at the boundaries (the mirror ghost sees the even extension, so
    // the half window with its own length is the correct weight there).
    auto avg_q = [&](double x) {
        if (periodic) return integral_periodic(p, x - 0.5 * h, x + 0.5 * h) / h;
        const double a = std::max(x - 0.5 * h, x_lo);
        const double b = std::min(x + 0.5 * h, x_hi);
        return p.integral(a, b) / (b - a);
    };

    int first = neumann_left ? 0 : 1;
    int last = neumann_right ? grid_n : grid_n - 1; // inclusive node index
    if (periodic) {
        first = 0;
        last = grid_n - 1;
    }
    op.n = last - first + 1;
    op.diag.resize(op.n);
    op.off.assign(op.n - 1, -c);
    for (int i = 0; i < op.n; ++i) op.diag[i] = 2.0 * c + avg_q(x_lo + (first + i) * h);
    if (periodic) {
        op.corner = -c;
    } else {
        // mirror ghost points, symmetrized: boundary coupling sqrt(2)/h^2
        if (neumann_left) op.off.front() = -std::sqrt(2.0) * c;
        if (neumann_right) op.off.back() = -std::sqrt(2.0) * c;
    }
    return op;
}

long oracle_count_below(const DiscretizedOperator& op, double x) {
    const int n = op.n;
    const double pivmin = 1e-300;
    auto guard = [&](double piv) {
        if (std::abs(piv) < pivmin) return (piv < 0.0) ? -pivmin : pivmin;
        return piv;
    };
    long count = 0;
    if (op.corner == 0.0) {
        double piv = guard(op.diag[0] - x);
        if (piv < 0.0) ++count;
        for (int i = 1; i < n; ++i) {
            piv = guard(op.diag[i] - x - op.off[i - 1] * op.off[i - 1] / piv);
            if (piv < 0.0) ++count;
        }
        return count;
    }
    // cyclic matrix: LDL^T with the fill column tracked against the last row
    double f = op.corner;                 // current coupling of row i to row n-1
    double last = op.diag[n - 1] - x;     // Schur complement accumulator
    double piv = guard(op.diag[0] - x);
    for (int i = 0; i <= n - 2; ++i) {
        if (piv < 0.0) ++count;
        last -= f * f / piv;
        const double base = (i + 1 == n - 2) ? op.off[n - 2] : 0.0;
        const double next_f = base - op.off[i] * f / piv;
        if (i + 1 <= n - 2) piv = guard(op.diag[i + 1] - x - op.off[i] * op.off[i] / piv);
        f = next_f;
    }
    if (guard(last) < 0.0) ++count;
    return count;
}

std::vector<double> oracle_spectrum(const DiscretizedOperator& op, int n_low, bool parallel) {
    if (n_low < 1 || n_low > op.n / 8)
        throw std::invalid_argument("oracle_spectrum: n_low out of range");
    // Gershgorin enclosure of the whole spectrum
    double lo = op.diag[0], hi = op.diag[0];
    for (int i = 0; i < op.n; ++i) {
        double radius = 0.0;
        if (i > 0) radius += std::abs(op.off[i - 1]);
        if (i + 1 < op.n) radius += std::abs(op.off[i]);
        if (op.corner != 0.0 && (i == 0 || i == op.n - 1)) radius += std::abs(op.corner);
        lo = std::min(lo, op.diag[i] - radius);
        hi = std::max(hi, op.diag[i] + radius);
    }
    std::vector<double> out(n_low);
    parallel_for(
        static_cast<std::size_t>(n_low),
        [&](std::size_t j) {
            double a = lo, b = hi;
            while (b - a > 1e-11 * std::max(1.0, std::max(std::abs(a), std::abs(b)))) {
                const double mid = 0.5 * (a + b);
                if (oracle_count_below(op, mid) > static_cast<long>(j)) b = mid;
                else a = mid;
            }
            out[j] = 0.5 * (a + b);
        },
        parallel);
    return out;
}

bool CrossValidation::has_fail() const {
    for (const auto& e : entries)
        if (e.status == CheckStatus::fail) return true;
    return false;
}

namespace {

struct FamilyRef {
    OracleProblem problem;
    std::string name;
    std::vector<double> reference; // from the main solvers
};

void add_family_entries(const Potential& p, const FamilyRef& fam, double tolerance, int grid_n,
                        double box_radius, std::vector<ReportEntry>& entries) {
    if (fam.reference.empty()) {
        ReportEntry e;
        e.theorem = "oracle";
        e.instance = fam.name + ": no discrete eigenvalues to compare";
        e.status = CheckStatus::skipped;
        entries.push_back(e);
        return;
    }
    const int count = static_cast<int>(fam.reference.size());
    const auto fine = DiscretizedOperator::build(p, fam.problem, grid_n, box_radius);
    const auto vals = oracle_spectrum(fine, count);
    double dev = 0.0;
    for (int i = 0; i < count; ++i) dev = std::max(dev, std::abs(vals[i] - fam.reference[i]));
    {
        std::ostringstream inst;
        inst << fam.name << ": max deviation of lowest " << count << " at n=" << grid_n;
        entries.push_back(nonstrict_entry("oracle", inst.str(), dev, tolerance, 0.0));
    }

    // Convergence order from a coarse resolution pair, against the (much more
    // accurate) main solver values. Box grids use multiples of 16 R so that
    // eighth-of-unit breakpoints stay node-aligned at both resolutions and
    // the h^2 error constant cancels cleanly in the ratio.
    const bool box = fam.problem == OracleProblem::box_dirichlet ||
                     fam.problem == OracleProblem::box_neumann ||
                     fam.problem == OracleProblem::box_line;
    const int base = box ? 16 * static_cast<int>(box_radius) * 2 : 1024;
    const auto coarse1 = oracle_spectrum(
        DiscretizedOperator::build(p, fam.problem, base, box_radius), count);
    const auto coarse2 = oracle_spectrum(
        DiscretizedOperator::build(p, fam.problem, 2 * base, box_radius), count);
    double order_acc = 0.0;
    int order_n = 0;
    for (int i = 0; i < count; ++i) {
        const double e1 = std::abs(coarse1[i] - fam.reference[i]);
        const double e2 = std::abs(coarse2[i] - fam.reference[i]);
        if (e2 > 1e-9 && e1 > e2) {
            order_acc += std::log2(e1 / e2);
            ++order_n;
        }
    }
    ReportEntry e;
    e.theorem = "oracle-order";
    if (order_n == 0) {
        e.instance = fam.name + ": convergence order not measurable";
        e.status = CheckStatus::skipped;
    } else {
        const double order = order_acc / order_n;
        std::ostringstream inst;
        inst << fam.name << ": observed convergence order " << order;
        e.instance = inst.str();
        e.left = order;
        e.right = 2.0;
        e.margin = order - 2.0;
        e.tolerance = 0.3;
        e.status = (order >= 1.7 && order <= 2.3) ? CheckStatus::pass : CheckStatus::fail;
    }
    entries.push_back(e);
}

} // namespace

CrossValidation cross_validate(const Potential& p, double tolerance, int grid_n,
                               double box_radius) {
    CrossValidation cv;
    Propagator prop(p);

    auto interval_ref = [&](Family f) {
        const SpectrumTable t = interval_eigenvalues(prop, f, 5);
        std::vector<double> v;
        for (const auto& e : t.entries) v.push_back(e.value);
        return v;
    };
    std::vector<FamilyRef> fams;
    fams.push_back({OracleProblem::interval_dirichlet, "dirichlet", interval_ref(Family::dirichlet)});
    fams.push_back({OracleProblem::interval_neumann, "neumann", interval_ref(Family::neumann)});
    fams.push_back({OracleProblem::interval_mixed01, "mixed01", interval_ref(Family::mixed01)});
    fams.push_back({OracleProblem::interval_mixed10, "mixed10", interval_ref(Family::mixed10)});
    {
        const PeriodicSpectrum ps = periodic_spectrum(prop, 3);
        std::vector<double> v{ps.lambda0};
        for (const auto& e : ps.edges) {
            v.push_back(e.lower);
            v.push_back(e.upper);
        }
        std::sort(v.begin(), v.end());
        v.resize(5);
        fams.push_back({OracleProblem::periodic, "periodic", v});
    }
    fams.push_back(
        {OracleProblem::box_dirichlet, "halfline_dirichlet", halfline_dirichlet_spectrum(prop).eigenvalues});
    fams.push_back(
        {OracleProblem::box_neumann, "halfline_neumann", halfline_neumann_spectrum(prop).eigenvalues});
    fams.push_back({OracleProblem::box_line, "line", line_spectrum(prop).eigenvalues});

    for (auto& fam : fams) {
        const bool box = fam.problem == OracleProblem::box_dirichlet ||
                         fam.problem == OracleProblem::box_neumann ||
                         fam.problem == OracleProblem::box_line;
        double radius = box_radius;
        double tol = tolerance;
        if (box) {
            // shallow bound states leak past the wall; push it out and relax
            for (double e : fam.reference)
                if (e > -0.05) {
                    radius = 4.0 * box_radius;
                    tol = std::max(tolerance, 5e-3);
                }
        }
        add_family_entries(p, fam, tol, grid_n, radius, cv.entries);
    }
    return cv;
}

} // namespace spectral
