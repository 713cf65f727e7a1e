#include "spectral/ode.hpp"

#include <cmath>
#include <stdexcept>

#include "spectral/errors.hpp"
#include "spectral/parallel.hpp"

namespace spectral {
namespace {

constexpr double kSeriesCut = 1e-4;

// c = cos(sqrt(w)), s = sin(sqrt(w))/sqrt(w): even entire functions of
// sqrt(w), so no square-root branch ever enters a result. Near w = 0 the
// Taylor series through w^4 avoids cancellation in s.
template <class T>
inline void cos_sinc(const T& w, T& c, T& s) {
    if (std::abs(w) < kSeriesCut) {
        c = 1.0 + w * (-1.0 / 2 + w * (1.0 / 24 + w * (-1.0 / 720 + w * (1.0 / 40320))));
        s = 1.0 + w * (-1.0 / 6 + w * (1.0 / 120 + w * (-1.0 / 5040 + w * (1.0 / 362880))));
        return;
    }
    if constexpr (std::is_same_v<T, double>) {
        if (w > 0.0) {
            const double r = std::sqrt(w);
            c = std::cos(r);
            s = std::sin(r) / r;
        } else {
            const double r = std::sqrt(-w);
            c = std::cosh(r);
            s = std::sinh(r) / r;
        }
    } else {
        const T r = std::sqrt(w);
        c = std::cos(r);
        s = std::sin(r) / r;
    }
}

// One layer of width h with frozen value v, z = lambda - v: advances both
// fundamental solutions by the exact constant-coefficient propagator.
template <class T>
inline void layer_step(const T& z, double h, T& y1, T& dy1, T& y2, T& dy2) {
    T c, s;
    cos_sinc(z * (h * h), c, s);
    const T hs = h * s;
    const T zhs = z * hs;
    T t = c * y1 + hs * dy1;
    dy1 = -zhs * y1 + c * dy1;
    y1 = t;
    t = c * y2 + hs * dy2;
    dy2 = -zhs * y2 + c * dy2;
    y2 = t;
}

double poly_eval4(const std::array<double, 4>& c, double s) {
    return c[0] + s * (c[1] + s * (c[2] + s * c[3]));
}

template <class T>
void run_layers(const std::vector<double>& width, const std::vector<double>& midval,
                const T& lambda, T& y1, T& dy1, T& y2, T& dy2) {
    y1 = 1.0;
    dy1 = 0.0;
    y2 = 0.0;
    dy2 = 1.0;
    for (std::size_t i = 0; i < width.size(); ++i)
        layer_step<T>(lambda - midval[i], width[i], y1, dy1, y2, dy2);
}

double norm_inf(Complex a, Complex b, Complex c, Complex d) {
    return std::max(std::max(std::abs(a), std::abs(b)), std::max(std::abs(c), std::abs(d)));
}

} // namespace

double TransferMatrix::det_residual() const {
    const double scale = std::max(1.0, std::abs(y1 * dy2) + std::abs(dy1 * y2));
    return std::abs(determinant() - 1.0) / scale;
}

TransferMatrix fundamental_matrix(const Potential& p, Complex lambda, int layers_per_cell) {
    if (!(std::isfinite(lambda.real()) && std::isfinite(lambda.imag())))
        throw std::invalid_argument("fundamental_matrix: non-finite lambda");
    if (layers_per_cell < 1)
        throw std::invalid_argument("fundamental_matrix: layers must be positive");
    TransferMatrix m;
    m.lambda = lambda;
    m.y1 = 1.0;
    m.dy1 = 0.0;
    m.y2 = 0.0;
    m.dy2 = 1.0;
    for (std::size_t i = 0; i < p.cell_count(); ++i) {
        const double h = p.cell_width(i) / layers_per_cell;
        for (int j = 0; j < layers_per_cell; ++j) {
            const double v = poly_eval4(p.cell_coeffs(i), (j + 0.5) * h);
            layer_step<Complex>(lambda - v, h, m.y1, m.dy1, m.y2, m.dy2);
            ++m.layers;
        }
    }
    return m;
}

Propagator::Table Propagator::build_table(int layers_per_poly_cell) const {
    Table t;
    const auto& p = potential_;
    for (std::size_t i = 0; i < p.cell_count(); ++i) {
        const int layers = p.cell_is_constant(i) ? 1 : layers_per_poly_cell;
        const double h = p.cell_width(i) / layers;
        for (int j = 0; j < layers; ++j) {
            t.width.push_back(h);
            t.midval.push_back(poly_eval4(p.cell_coeffs(i), (j + 0.5) * h));
        }
    }
    return t;
}

Propagator::Propagator(const Potential& p, OdeAccuracy acc) : potential_(p), acc_(acc) {
    exact_ = p.all_cells_constant();
    if (exact_) {
        fine_layers_ = 1;
        fine_ = build_table(1);
        return;
    }
    // Double until two successive Richardson extrapolants agree at every
    // probe energy, then freeze. Probes cover the negative range reachable by
    // eigenvalues, moderate energies and one high-frequency point.
    const double depth = potential_.max_qminus();
    const std::vector<Complex> probes = {Complex(3.7, 0.0), Complex(-(depth + 7.3), 0.0),
                                         Complex(417.19, 0.0), Complex(3948.8, 0.0)};
    int layers = std::max(4, acc_.base_layers);
    while (true) {
        fine_ = build_table(layers);
        mid_ = build_table(layers / 2);
        coarse_ = build_table(layers / 4);
        double worst = 0.0;
        for (const Complex& lam : probes) {
            double err = 0.0;
            (void)eval(lam, &err);
            worst = std::max(worst, err);
        }
        if (worst <= acc_.rel_tol) break;
        if (layers >= acc_.max_layers)
            throw ConvergenceFailure("layer refinement did not converge at " +
                                     std::to_string(layers) + " layers per cell");
        layers *= 2;
    }
    fine_layers_ = layers;
}

TransferMatrix Propagator::eval(Complex lambda, double* disagreement) const {
    TransferMatrix fine;
    fine.lambda = lambda;
    fine.layers = static_cast<int>(fine_.width.size());
    run_layers<Complex>(fine_.width, fine_.midval, lambda, fine.y1, fine.dy1, fine.y2, fine.dy2);
    if (exact_) {
        if (disagreement) *disagreement = 0.0;
        return fine;
    }
    Complex my1, mdy1, my2, mdy2, cy1, cdy1, cy2, cdy2;
    run_layers<Complex>(mid_.width, mid_.midval, lambda, my1, mdy1, my2, mdy2);
    run_layers<Complex>(coarse_.width, coarse_.midval, lambda, cy1, cdy1, cy2, cdy2);
    // two Richardson steps on the h^2 error expansion of the midpoint scheme
    auto extrap = [](Complex a, Complex b, Complex c, Complex& r1b_out) {
        const Complex r1a = (4.0 * b - a) / 3.0;
        const Complex r1b = (4.0 * c - b) / 3.0;
        r1b_out = r1b - r1a;
        return (16.0 * r1b - r1a) / 15.0;
    };
    Complex d1, d2, d3, d4;
    TransferMatrix out;
    out.lambda = lambda;
    out.layers = fine.layers;
    out.y1 = extrap(cy1, my1, fine.y1, d1);
    out.dy1 = extrap(cdy1, mdy1, fine.dy1, d2);
    out.y2 = extrap(cy2, my2, fine.y2, d3);
    out.dy2 = extrap(cdy2, mdy2, fine.dy2, d4);
    if (disagreement) {
        const double scale = std::max(1.0, norm_inf(out.y1, out.y2, out.dy1, out.dy2));
        *disagreement = norm_inf(d1, d2, d3, d4) / scale;
    }
    return out;
}

TransferMatrix Propagator::matrix(Complex lambda) const {
    if (!(std::isfinite(lambda.real()) && std::isfinite(lambda.imag())))
        throw std::invalid_argument("Propagator::matrix: non-finite lambda");
    return eval(lambda, nullptr);
}

void Propagator::real_fundamental(double lambda, double& y1, double& dy1, double& y2,
                                  double& dy2) const {
    run_layers<double>(fine_.width, fine_.midval, lambda, y1, dy1, y2, dy2);
    if (exact_) return;
    double my1, mdy1, my2, mdy2, cy1, cdy1, cy2, cdy2;
    run_layers<double>(mid_.width, mid_.midval, lambda, my1, mdy1, my2, mdy2);
    run_layers<double>(coarse_.width, coarse_.midval, lambda, cy1, cdy1, cy2, cdy2);
    auto extrap = [](double a, double b, double c) {
        const double r1a = (4.0 * b - a) / 3.0;
        const double r1b = (4.0 * c - b) / 3.0;
        return (16.0 * r1b - r1a) / 15.0;
    };
    y1 = extrap(cy1, my1, y1);
    dy1 = extrap(cdy1, mdy1, dy1);
    y2 = extrap(cy2, my2, y2);
    dy2 = extrap(cdy2, mdy2, dy2);
}

void Propagator::real_endpoint(double lambda, double y0, double dy0, double& y, double& dy) const {
    double y1, dy1, y2, dy2;
    real_fundamental(lambda, y1, dy1, y2, dy2);
    y = y0 * y1 + dy0 * y2;
    dy = y0 * dy1 + dy0 * dy2;
}

RealEndpoint Propagator::count_endpoint(double lambda, double y0, double dy0) const {
    RealEndpoint r;
    double y = y0, dy = dy0;
    long zeros = 0;
    for (std::size_t i = 0; i < fine_.width.size(); ++i) {
        const double z = lambda - fine_.midval[i];
        const double h = fine_.width[i];
        double c, s;
        cos_sinc(z * (h * h), c, s);
        const double yb = c * y + h * s * dy;
        const double dyb = -z * h * s * y + c * dy;
        if (z > 0.0) {
            // The scaled phase of (omega*y, y') advances linearly by omega*h;
            // zeros of y on (a, b] are its crossings of multiples of pi.
            const double omega = std::sqrt(z);
            double psi = std::atan2(omega * y, dy);
            if (psi < 0.0) psi += M_PI;
            if (psi >= M_PI) psi = 0.0;
            zeros += static_cast<long>(std::floor((psi + omega * h) / M_PI));
        } else {
            // no oscillation below the layer value: at most one sign change
            if (y != 0.0 && ((y < 0.0) != (yb < 0.0) || yb == 0.0)) zeros += 1;
        }
        y = yb;
        dy = dyb;
    }
    r.y = y;
    r.dy = dy;
    r.zeros = zeros;
    return r;
}

Complex lyapunov(const Potential& p, Complex lambda) {
    return Propagator(p).matrix(lambda).half_trace();
}

AsymptoticResiduals asymptotic_residuals(const Potential& p, const std::vector<double>& grid) {
    AsymptoticResiduals out;
    out.lambda = grid;
    Propagator prop(p);
    for (double lam : grid) {
        const TransferMatrix m = prop.matrix(Complex(lam, 0.0));
        const double r = std::sqrt(lam);
        const double free_y2 = (r == 0.0) ? 1.0 : std::sin(r) / r;
        const double free_c = std::cos(r);
        out.res_y2.push_back(std::abs(m.y2.real() - free_y2) * std::abs(lam));
        out.res_dy2.push_back(std::abs(m.dy2.real() - free_c) * std::sqrt(std::abs(lam)));
        out.res_y1.push_back(std::abs(m.y1.real() - free_c) * std::sqrt(std::abs(lam)));
        out.res_dy1.push_back(std::abs(m.dy1.real() + r * std::sin(r)));
    }
    return out;
}

std::vector<TransferMatrix> fundamental_matrices(const Propagator& prop,
                                                 const std::vector<Complex>& lambdas,
                                                 bool parallel) {
    std::vector<TransferMatrix> out(lambdas.size());
    parallel_for(
        lambdas.size(), [&](std::size_t i) { out[i] = prop.matrix(lambdas[i]); }, parallel);
    return out;
}

} // namespace spectral
