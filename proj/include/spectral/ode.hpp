#pragma once

#include <complex>
#include <vector>

#include "spectral/potential.hpp"

namespace spectral {

using Complex = std::complex<double>;

/// Endpoint values of the fundamental system of -y'' + q y = lambda y on
/// [0, 1]: y1(0) = 1, y1'(0) = 0 and y2(0) = 0, y2'(0) = 1. As a matrix,
/// [[y1, y2], [y1', y2']] at x = 1, with unit determinant (Wronskian).
struct TransferMatrix {
    Complex y1, y2, dy1, dy2;
    Complex lambda;
    int layers = 0; // total layers of the finest decomposition used

    Complex determinant() const { return y1 * dy2 - dy1 * y2; }

    /// |det - 1| scaled by the magnitude of the products whose cancellation
    /// forms the determinant.
    double det_residual() const;

    /// Half trace (y1 + y2') / 2; equals the band discriminant of the
    /// 2-periodic problem built from q.
    Complex half_trace() const { return 0.5 * (y1 + dy2); }
};

/// Midpoint-layered evaluation: the potential is frozen at the midpoint of
/// each layer and the layer is propagated by the exact constant-coefficient
/// solution, written as even series in omega^2 = lambda - v so the result is
/// entire in lambda and free of branch choices. Exact for constant cells at
/// any layer count; second order in the layer width otherwise.
TransferMatrix fundamental_matrix(const Potential& p, Complex lambda, int layers_per_cell);

struct OdeAccuracy {
    double rel_tol = 1e-10;  // agreement of successive Richardson extrapolants
    int base_layers = 64;    // starting layers per non-constant cell
    int max_layers = 1 << 14;
};

/// Endpoint data of one real solution, with the exact zero count of the
/// layered problem on (0, 1].
struct RealEndpoint {
    double y = 0.0;
    double dy = 0.0;
    long zeros = 0;
};

/// Precomputed layer decomposition for one potential. Constant cells use a
/// single exact layer; other cells start at base_layers and are doubled until
/// two successive Richardson extrapolants of the full matrix agree to rel_tol
/// at a set of probe energies, then the decomposition is frozen so that
/// counting and refinement stay mutually consistent across lambda.
class Propagator {
public:
    explicit Propagator(const Potential& p, OdeAccuracy acc = {});

    const Potential& potential() const { return potential_; }
    bool exact() const { return exact_; }
    int fine_layers_per_poly_cell() const { return fine_layers_; }

    /// Richardson-extrapolated matrix (exact product for constant cells).
    TransferMatrix matrix(Complex lambda) const;

    /// Extrapolated real endpoint values for initial data (y0, dy0).
    void real_endpoint(double lambda, double y0, double dy0, double& y, double& dy) const;

    /// All four extrapolated fundamental endpoint values in one pass.
    void real_fundamental(double lambda, double& y1, double& dy1, double& y2, double& dy2) const;

    /// Endpoint values and exact interior zero count at the frozen finest
    /// decomposition (no extrapolation, so counts are integers of one fixed
    /// layered operator for every lambda).
    RealEndpoint count_endpoint(double lambda, double y0, double dy0) const;

private:
    struct Table {
        std::vector<double> width;
        std::vector<double> midval;
    };
    Table build_table(int layers_per_poly_cell) const;
    TransferMatrix eval(Complex lambda, double* disagreement) const;

    Potential potential_;
    OdeAccuracy acc_;
    bool exact_ = false;
    int fine_layers_ = 1;
    Table fine_, mid_, coarse_;
};

/// Band discriminant at lambda (converged evaluation).
Complex lyapunov(const Potential& p, Complex lambda);

/// Scaled deviations of the matrix entries from the free (q = 0) values:
///   |y2 - sin(r)/r| * |lambda|,   |y2' - cos(r)| * |lambda|^{1/2},
///   |y1 - cos(r)| * |lambda|^{1/2},  |y1' + r sin(r)|,   r = sqrt(lambda).
/// Bounded along real rays lambda -> +inf for integrable potentials.
struct AsymptoticResiduals {
    std::vector<double> lambda;
    std::vector<double> res_y2, res_dy2, res_y1, res_dy1;
};
AsymptoticResiduals asymptotic_residuals(const Potential& p, const std::vector<double>& grid);

/// Batch kernels. Items are independent; the parallel path distributes them
/// over OpenMP threads and is bit-identical to the serial one.
std::vector<TransferMatrix> fundamental_matrices(const Propagator& prop,
                                                 const std::vector<Complex>& lambdas,
                                                 bool parallel = true);

} // namespace spectral
