#pragma once

#include <vector>

#include "spectral/potential.hpp"
#include "spectral/report.hpp"

namespace spectral {

/// Independent cross-validation path: second-order finite differences on a
/// grid, eigenvalues by Sturm-sequence bisection. Shares no code with the
/// transfer-matrix solvers.
enum class OracleProblem {
    interval_dirichlet,
    interval_neumann,
    interval_mixed01,
    interval_mixed10,
    periodic,          // 2-periodic problem on [0, 2]
    box_dirichlet,     // half line truncated to [0, R], Dirichlet wall at R
    box_neumann,       // half line, Neumann at 0, Dirichlet wall at R
    box_line           // full line truncated to [-R, R]
};

/// Symmetric (cyclic for the periodic case) tridiagonal discretization with
/// diagonal 2/h^2 + q_i and off-diagonal -1/h^2. The potential enters through
/// exact local cell averages, which keeps the eigenvalue error second order
/// even when jumps fall between grid nodes; mirror ghost points handle
/// Neumann sides (symmetrized with sqrt(2) boundary couplings).
struct DiscretizedOperator {
    OracleProblem problem;
    int n = 0;                  // matrix dimension
    double h = 0.0;
    std::vector<double> diag;
    std::vector<double> off;    // size n-1
    double corner = 0.0;        // wrap-around coupling, periodic only

    static DiscretizedOperator build(const Potential& p, OracleProblem problem, int grid_n,
                                     double box_radius = 30.0);
};

/// Lowest n_low eigenvalues by Sturm bisection (bordered factorization for
/// the cyclic case). Bisections for distinct indices run in parallel.
std::vector<double> oracle_spectrum(const DiscretizedOperator& op, int n_low,
                                    bool parallel = true);

/// Eigenvalue count below x (negative-pivot count of the shifted matrix).
long oracle_count_below(const DiscretizedOperator& op, double x);

struct CrossValidation {
    std::vector<ReportEntry> entries;
    bool has_fail() const;
};

/// Compares the lowest eigenvalues of every family against the oracle at the
/// requested resolution and measures the convergence order from a coarse
/// resolution pair. Unbounded problems compare only the negative eigenvalues.
CrossValidation cross_validate(const Potential& p, double tolerance, int grid_n = 8192,
                               double box_radius = 30.0);

} // namespace spectral
