#include <doctest.h>

#include <cmath>

#include "spectral/corpus.hpp"
#include "spectral/errors.hpp"
#include "spectral/potential.hpp"
#include "spectral/quadrature.hpp"

using namespace spectral;

TEST_CASE("evaluation: support, right limits, outside zero") {
    const Potential z = Potential::zero();
    CHECK(z(0.5) == 0.0);

    const Potential w = Potential::constant(-4.0);
    CHECK(w(0.25) == -4.0);
    CHECK(w(1.5) == 0.0);
    CHECK(w(-0.1) == 0.0);
    CHECK(w(0.0) == -4.0);
    CHECK(w(1.0) == -4.0); // left limit at the right support edge

    const Potential s = Potential::piecewise_constant({0.0, 0.5, 1.0}, {-9.0, 3.0});
    CHECK(s(0.5) == 3.0); // right limit at an interior breakpoint
    CHECK(s(0.5 - 1e-12) == -9.0);
}

TEST_CASE("functionals: closed forms") {
    const auto f0 = Potential::zero().functionals();
    CHECK(f0.int_q == 0.0);
    CHECK(f0.int_x_qminus == 0.0);
    CHECK(f0.int_qminus == 0.0);
    CHECK(f0.int_sqrt_qminus == 0.0);
    CHECK(*f0.l2_norm == 0.0);
    CHECK(f0.is_monotone);
    CHECK(f0.is_nonpositive);

    const auto f4 = Potential::constant(-4.0).functionals();
    CHECK(f4.int_q == doctest::Approx(-4.0).epsilon(1e-14));
    CHECK(f4.int_x_qminus == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(f4.int_qminus == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(f4.int_sqrt_qminus == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(*f4.l2_norm == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(f4.is_monotone);
    CHECK(f4.is_nonpositive);

    const auto fs = Potential::piecewise_constant({0.0, 0.5, 1.0}, {-9.0, 0.0}).functionals();
    CHECK(fs.int_x_qminus == doctest::Approx(1.125).epsilon(1e-14));
}

TEST_CASE("functionals: cubic cells against quadrature") {
    // sign-changing cubics on two cells
    const Potential p = Potential::piecewise_poly(
        {0.0, 0.5, 1.0}, {{{-3.0, 10.0, 4.0, -20.0}}, {{2.0, -12.0, 0.0, 8.0}}});
    const auto f = p.functionals();
    auto qminus = [&](double x) { return std::max(0.0, -p(x)); };
    const double iq = adaptive_integral([&](double x) { return p(x); }, 0.0, 1.0, 1e-13);
    const double iqm = adaptive_integral(qminus, 0.0, 1.0, 1e-13);
    const double ixm = adaptive_integral([&](double x) { return x * qminus(x); }, 0.0, 1.0, 1e-13);
    const double isq =
        adaptive_integral([&](double x) { return std::sqrt(qminus(x)); }, 0.0, 1.0, 1e-12);
    const double il2 =
        std::sqrt(adaptive_integral([&](double x) { return p(x) * p(x); }, 0.0, 1.0, 1e-13));
    CHECK(f.int_q == doctest::Approx(iq).epsilon(1e-10));
    CHECK(f.int_qminus == doctest::Approx(iqm).epsilon(1e-9));
    CHECK(f.int_x_qminus == doctest::Approx(ixm).epsilon(1e-9));
    CHECK(f.int_sqrt_qminus == doctest::Approx(isq).epsilon(1e-8));
    CHECK(*f.l2_norm == doctest::Approx(il2).epsilon(1e-10));
    CHECK_FALSE(f.is_monotone);
}

TEST_CASE("shift: pointwise and functional law") {
    const Potential shifted = Potential::zero().shifted(4.0);
    for (double x : {0.0, 0.3, 0.99, 1.0}) CHECK(shifted(x) == -4.0);
    CHECK(shifted(1.2) == 0.0);

    std::uint64_t s = 12345;
    for (int i = 0; i < 50; ++i) {
        const Potential p = corpus_potential(7, i);
        const double eps = rng::uniform(s, -10.0, 10.0);
        const auto a = p.functionals();
        const auto b = p.shifted(eps).functionals();
        CHECK(b.int_q == doctest::Approx(a.int_q - eps).epsilon(1e-12));
    }
}

TEST_CASE("even extension agrees at mirrored points to the bit") {
    const DerivedPotential even{corpus_potential(3, 2), PotentialTransform::even_extension};
    std::uint64_t s = 99;
    for (int i = 0; i < 10000; ++i) {
        const double x = rng::uniform(s, 0.0, 1.0);
        CHECK(even(x) == even(-x));
    }
}

TEST_CASE("periodic extension repeats the base pattern exactly") {
    const Potential p = corpus_potential(3, 4);
    const DerivedPotential per{p, PotentialTransform::periodic_extension};
    std::uint64_t s = 17;
    for (int i = 0; i < 1000; ++i) {
        const double x = rng::uniform(s, 1.0, 2.0);
        CHECK(per(x) == p(x - 1.0));
    }
}

TEST_CASE("rescaled even extension: pointwise identity for both cell kinds") {
    for (const Potential& p : {corpus_potential(5, 0), smooth_meanzero(5, 1)}) {
        const Potential e4 = p.even_rescaled();
        std::uint64_t s = 31;
        for (int i = 0; i < 2000; ++i) {
            const double u = rng::uniform(s, 1e-6, 1.0 - 1e-6);
            if (std::abs(u - 0.5) < 1e-9) continue; // breakpoint side convention flips there
            const double x = std::abs(2.0 * u - 1.0);
            CHECK(e4(u) == doctest::Approx(4.0 * p(x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("functional nonnegativity on the corpus") {
    for (int i = 0; i < 25; ++i) {
        const auto f = corpus_potential(11, i).functionals();
        CHECK(f.int_x_qminus >= 0.0);
        CHECK(f.int_qminus >= 0.0);
        CHECK(f.int_sqrt_qminus >= 0.0);
        CHECK(*f.l2_norm >= 0.0);
    }
}

TEST_CASE("monotone detection") {
    CHECK(monotone_staircase(2, 0).functionals().is_monotone);
    CHECK(monotone_staircase(2, 1).functionals().is_monotone);
    const Potential dec = Potential::piecewise_constant({0.0, 0.5, 1.0}, {5.0, -2.0});
    CHECK(dec.functionals().is_monotone);
    const Potential wiggle = Potential::piecewise_constant({0.0, 0.3, 0.7, 1.0}, {1.0, -2.0, 0.5});
    CHECK_FALSE(wiggle.functionals().is_monotone);
}

TEST_CASE("construction rejects malformed grids with the field name") {
    CHECK_THROWS_WITH_AS(Potential::piecewise_constant({0.0, 0.5, 0.5, 1.0}, {1.0, 2.0, 3.0}),
                         doctest::Contains("breakpoints"), ParseError);
    CHECK_THROWS_WITH_AS(Potential::piecewise_constant({0.1, 1.0}, {1.0}),
                         doctest::Contains("breakpoints"), ParseError);
    CHECK_THROWS_WITH_AS(Potential::piecewise_constant({0.0, 0.9}, {1.0}),
                         doctest::Contains("breakpoints"), ParseError);
    CHECK_THROWS_WITH_AS(Potential::piecewise_constant({0.0, 1.0}, {1.0, 2.0}),
                         doctest::Contains("values"), ParseError);
}
