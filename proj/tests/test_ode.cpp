#include <doctest.h>

#include <cmath>
#include <cstring>

#include "spectral/corpus.hpp"
#include "spectral/ode.hpp"

using namespace spectral;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("free potential reproduces trig closed forms") {
    const Potential z = Potential::zero();
    const TransferMatrix m = fundamental_matrix(z, {kPi * kPi, 0.0}, 8);
    CHECK(std::abs(m.y2) < 1e-12);
    CHECK(m.dy2.real() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(m.y1.real() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(m.dy1) < 1e-11);

    // below the spectrum growth follows sinh
    const TransferMatrix g = fundamental_matrix(z, {-100.0, 0.0}, 8);
    CHECK(g.y2.real() == doctest::Approx(std::sinh(10.0) / 10.0).epsilon(1e-12));
}

TEST_CASE("constant well closed forms") {
    const Potential w = Potential::constant(-4.0);
    const TransferMatrix m = fundamental_matrix(w, {0.0, 0.0}, 1);
    CHECK(m.y2.real() == doctest::Approx(std::sin(2.0) / 2.0).epsilon(1e-14));
    CHECK(m.dy2.real() == doctest::Approx(std::cos(2.0)).epsilon(1e-14));
    CHECK(lyapunov(w, {-1.44, 0.0}).real() == doctest::Approx(std::cos(1.6)).epsilon(1e-13));
    CHECK(lyapunov(Potential::zero(), {0.0, 0.0}).real() == doctest::Approx(1.0));
    CHECK(lyapunov(Potential::zero(), {kPi * kPi, 0.0}).real() ==
          doctest::Approx(-1.0).epsilon(1e-13));

    // all four entries match cos/sin forms over a wide sweep of lambda - v
    for (double dv : {-9000.0, -500.0, -2.0, 1e-6, 3.0, 700.0, 9999.0}) {
        const Complex lam(dv - 4.0, 0.0);
        const TransferMatrix mm = fundamental_matrix(w, lam, 16);
        const Complex r = std::sqrt(Complex(dv, 0.0));
        const Complex c = std::cos(r), s = (std::abs(r) == 0.0) ? 1.0 : std::sin(r) / r;
        CHECK(std::abs(mm.y1 - c) <= 1e-11 * (1.0 + std::abs(c)));
        CHECK(std::abs(mm.y2 - s) <= 1e-11 * (1.0 + std::abs(s)));
        CHECK(std::abs(mm.dy2 - c) <= 1e-11 * (1.0 + std::abs(c)));
        CHECK(std::abs(mm.dy1 + dv * s) <= 1e-11 * (1.0 + std::abs(dv * s)));
    }
}

TEST_CASE("unit determinant over random potentials and wide lambda range") {
    std::uint64_t s = 4242;
    for (int i = 0; i < 1000; ++i) {
        const Potential p = corpus_potential(100, i % 40);
        Complex lam;
        switch (i % 3) {
            case 0: lam = {rng::uniform(s, -1e4, 1e6), 0.0}; break;
            case 1: lam = {rng::uniform(s, -100.0, 1e4), rng::uniform(s, -1e3, 1e3)}; break;
            default: lam = {rng::uniform(s, -40.0, 40.0), rng::uniform(s, -5.0, 5.0)}; break;
        }
        const TransferMatrix m = fundamental_matrix(p, lam, 4);
        CHECK(m.det_residual() <= 1e-12);
    }
}

TEST_CASE("shift covariance is exact at matched layer decomposition") {
    const Potential p = corpus_potential(9, 3);
    std::uint64_t s = 55;
    for (int i = 0; i < 50; ++i) {
        const double eps = rng::uniform(s, -20.0, 20.0);
        const Complex lam(rng::uniform(s, -30.0, 200.0), rng::uniform(s, -3.0, 3.0));
        const TransferMatrix a = fundamental_matrix(p.shifted(eps), lam, 4);
        const TransferMatrix b = fundamental_matrix(p, lam + eps, 4);
        CHECK(a.y1 == b.y1);
        CHECK(a.y2 == b.y2);
        CHECK(a.dy1 == b.dy1);
        CHECK(a.dy2 == b.dy2);
    }
}

TEST_CASE("layer refinement: two Richardson steps settle, any approach direction") {
    const Potential p = smooth_meanzero(13, 0);
    auto r2 = [&](Complex lam, int L) {
        const TransferMatrix a = fundamental_matrix(p, lam, L);
        const TransferMatrix b = fundamental_matrix(p, lam, 2 * L);
        const TransferMatrix c = fundamental_matrix(p, lam, 4 * L);
        auto extrap = [](Complex x, Complex y, Complex z) {
            return (16.0 * ((4.0 * z - y) / 3.0) - (4.0 * y - x) / 3.0) / 15.0;
        };
        return extrap(a.y2, b.y2, c.y2);
    };
    for (Complex lam : {Complex(7.3, 0.0), Complex(7.3, 1e-3), Complex(7.3, -1e-3),
                        Complex(-22.0, 0.5), Complex(911.0, 0.0)}) {
        const Complex v1 = r2(lam, 32), v2 = r2(lam, 64);
        CHECK(std::abs(v1 - v2) <= 1e-10 * (1.0 + std::abs(v2)));
    }
}

TEST_CASE("entries diverge to +infinity far below the spectrum") {
    for (const Potential& p : {Potential::zero(), corpus_potential(21, 5)}) {
        const TransferMatrix m = Propagator(p).matrix({-1e4, 0.0});
        for (const Complex v : {m.y1, m.y2, m.dy1, m.dy2}) {
            CHECK(v.real() > 1e6);
            CHECK(std::abs(v.imag()) == 0.0);
        }
    }
}

TEST_CASE("asymptotic residuals: free is exact, constant matches the expansion") {
    const std::vector<double> grid{1e2, 1e3, 1e4};
    const auto r0 = asymptotic_residuals(Potential::zero(), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(r0.res_y2[i] <= 1e-11);
        CHECK(r0.res_dy2[i] <= 1e-11);
        CHECK(r0.res_y1[i] <= 1e-11);
        CHECK(r0.res_dy1[i] <= 1e-11);
    }
    // constant well: the deviation is exactly the closed-form difference
    const auto r4 = asymptotic_residuals(Potential::constant(-4.0), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double lam = grid[i];
        const double exact =
            std::abs(std::sin(std::sqrt(lam + 4.0)) / std::sqrt(lam + 4.0) -
                     std::sin(std::sqrt(lam)) / std::sqrt(lam)) * lam;
        CHECK(r4.res_y2[i] == doctest::Approx(exact).epsilon(1e-8));
        CHECK(r4.res_y2[i] < 2.0);
    }
}

TEST_CASE("high-frequency deviation of y1 stays below the frozen bound") {
    // calibrated once against the converged solver on this seeded potential
    const Potential p = corpus_potential(42, 0);
    const TransferMatrix m = Propagator(p).matrix({1e6, 0.0});
    const double dev = std::abs(m.y1.real() - std::cos(std::sqrt(1e6)));
    CHECK(dev <= 10.0 / std::sqrt(1e6));
}

TEST_CASE("real lambda keeps the complex path exactly real") {
    const Potential p = corpus_potential(33, 1);
    Propagator prop(p);
    for (double lam : {-25.0, 0.0, 17.0, 444.4}) {
        const TransferMatrix m = prop.matrix({lam, 0.0});
        CHECK(std::abs(m.y1.imag()) == 0.0);
        CHECK(std::abs(m.y2.imag()) == 0.0);
        CHECK(std::abs(m.dy1.imag()) == 0.0);
        CHECK(std::abs(m.dy2.imag()) == 0.0);
    }
}

TEST_CASE("non-finite lambda is rejected") {
    CHECK_THROWS_AS(fundamental_matrix(Potential::zero(),
                                       {std::numeric_limits<double>::infinity(), 0.0}, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(fundamental_matrix(Potential::zero(), {0.0, 0.0}, 0), std::invalid_argument);
}

TEST_CASE("count endpoint matches the refined root structure at free potential") {
    Propagator prop(Potential::zero());
    // zeros of sin(sqrt(lambda) x) on (0, 1]: floor(sqrt(lambda)/pi)
    for (double lam : {1.0, 15.0, 105.0, 1000.0}) {
        const RealEndpoint e = prop.count_endpoint(lam, 0.0, 1.0);
        CHECK(e.zeros == static_cast<long>(std::floor(std::sqrt(lam) / kPi)));
    }
}
