#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "spectral/corpus.hpp"
#include "spectral/scattering.hpp"

using namespace spectral;

TEST_CASE("free potential: unit jost function and linear wronskian") {
    Propagator prop(Potential::zero());
    for (int i = 0; i < 50; ++i) {
        const double t = -3.0 + 6.0 * i / 49.0;
        const Complex k = (i % 2 == 0) ? Complex(0.0, t) : Complex(0.7 * t, 0.4 * t);
        const JostEvaluation j = jost(prop, k);
        CHECK(std::abs(j.psi - 1.0) <= 1e-10);
        CHECK(std::abs(j.psi_prime - Complex(0.0, 1.0) * k) <= 1e-10 * (1.0 + std::abs(k)));
        CHECK(std::abs(j.wronskian - 2.0 * Complex(0.0, 1.0) * k) <=
              1e-10 * (1.0 + std::abs(k)));
    }
    CHECK(halfline_dirichlet_spectrum(prop).size() == 0);
    CHECK(halfline_neumann_spectrum(prop).size() == 0);
    CHECK(line_spectrum(prop).size() == 0);
}

TEST_CASE("constant well: scaled axis values match the closed forms") {
    Propagator prop(Potential::constant(-4.0));
    {
        const double t = 1.2, w = 1.6;
        const double expect = -2.0 * t * std::cos(w) - t * t * std::sin(w) / w + w * std::sin(w);
        CHECK(scaled_wronskian_axis(prop, t) == doctest::Approx(expect).epsilon(1e-12));
    }
    {
        const double t = 0.6, w = std::sqrt(4.0 - 0.36);
        const double expect = std::cos(w) + t * std::sin(w) / w;
        CHECK(scaled_psi_axis(prop, t) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("constant well: spectra against the transcendental oracles") {
    Propagator prop(Potential::constant(-4.0));
    const auto oT = testoracle::well_halfline_dirichlet(4.0);
    const auto oN = testoracle::well_halfline_neumann(4.0);
    const auto oL = testoracle::well_line(4.0);
    REQUIRE(oT.size() == 1);
    REQUIRE(oN.size() == 1);
    REQUIRE(oL.size() == 1);

    const DiscreteSpectrum dir = halfline_dirichlet_spectrum(prop);
    const DiscreteSpectrum neu = halfline_neumann_spectrum(prop);
    const DiscreteSpectrum lin = line_spectrum(prop);
    REQUIRE(dir.size() == 1);
    REQUIRE(neu.size() == 1);
    REQUIRE(lin.size() == 1);
    CHECK(std::abs(dir.eigenvalues[0] - oT[0]) <= 1e-8);
    CHECK(std::abs(neu.eigenvalues[0] - oN[0]) <= 1e-8);
    CHECK(std::abs(lin.eigenvalues[0] - oL[0]) <= 1e-8);

    // the full-line chain sits strictly between the half-line cases
    CHECK(-4.0 < neu.eigenvalues[0]);
    CHECK(neu.eigenvalues[0] < lin.eigenvalues[0]);
    CHECK(lin.eigenvalues[0] < dir.eigenvalues[0]);
    CHECK(dir.eigenvalues[0] < 0.0);
    CHECK(dir.residuals[0] <= 1e-9);
}

TEST_CASE("scaled functions are real on the imaginary axis") {
    for (int i = 0; i < 3; ++i) {
        Propagator prop(corpus_potential(70, i));
        for (int j = 0; j <= 40; ++j) {
            const double t = -20.0 + j;
            const JostEvaluation je = jost(prop, Complex(0.0, t));
            CHECK(std::abs(je.scaled_psi.imag()) <= 1e-10 * (1.0 + std::abs(je.scaled_psi)));
            CHECK(std::abs(je.scaled_psi_prime.imag()) <=
                  1e-10 * (1.0 + std::abs(je.scaled_psi_prime)));
            CHECK(std::abs(je.scaled_wronskian.imag()) <=
                  1e-10 * (1.0 + std::abs(je.scaled_wronskian)));
            // and the complex path agrees with the real-axis path
            CHECK(je.scaled_psi.real() ==
                  doctest::Approx(scaled_psi_axis(prop, t)).epsilon(1e-12));
        }
    }
}

TEST_CASE("counting identities and chains on a corpus slice") {
    for (int i = 0; i < 15; ++i) {
        const Potential p = corpus_potential(42, i);
        Propagator prop(p);
        const DiscreteSpectrum dir = halfline_dirichlet_spectrum(prop);
        const DiscreteSpectrum neu = halfline_neumann_spectrum(prop);
        const DiscreteSpectrum lin = line_spectrum(prop);
        const long m = dir.size(), n = neu.size();
        CHECK(m == count_negative(prop, Family::mixed01));
        CHECK(n == count_negative(prop, Family::neumann));
        CHECK(lin.size() == n);
        CHECK(count_negative(prop, Family::dirichlet) <= m);

        const SpectrumTable tau = interval_eigenvalues(prop, Family::mixed01, 11);
        const SpectrumTable mu = interval_eigenvalues(prop, Family::dirichlet, 11);
        const SpectrumTable nu = interval_eigenvalues(prop, Family::neumann, 11);
        const SpectrumTable rho = interval_eigenvalues(prop, Family::mixed10, 11);
        for (long j = 1; j <= m; ++j) {
            CHECK(tau.entries[j - 1].value < dir.eigenvalues[j - 1]);
            CHECK(dir.eigenvalues[j - 1] < mu.entries[j - 1].value);
        }
        for (long j = 1; j <= n; ++j) {
            CHECK(nu.entries[j - 1].value < neu.eigenvalues[j - 1]);
            CHECK(neu.eigenvalues[j - 1] < rho.entries[j - 1].value);
            CHECK(neu.eigenvalues[j - 1] < lin.eigenvalues[j - 1]);
            if (j <= m) CHECK(lin.eigenvalues[j - 1] < dir.eigenvalues[j - 1]);
        }
        // dichotomy of the count pair decided by the sign of tau_N
        if (n > 0) {
            if (tau.entries[n - 1].value >= 0.0) CHECK(m == n - 1);
            else CHECK(m == n);
        }
    }
}

TEST_CASE("deep jost values stay near one along the imaginary axis") {
    Propagator prop(corpus_potential(42, 2));
    const double bound = prop.potential().l1_norm() + 1.0;
    for (double t : {10.0, 30.0, 100.0, 316.0, 1000.0}) {
        const JostEvaluation je = jost(prop, Complex(0.0, t));
        CHECK(std::abs(je.psi - 1.0) * t <= bound);
    }
}

TEST_CASE("even extension: union, factorization, count dichotomy") {
    const EvenLineResult ev = even_line_spectrum(Potential::constant(-4.0));
    const auto oT = testoracle::well_halfline_dirichlet(4.0);
    const auto oN = testoracle::well_halfline_neumann(4.0);
    REQUIRE(ev.n_even == 2);
    CHECK(std::abs(ev.merged.eigenvalues[0] - oN[0]) <= 1e-8);
    CHECK(std::abs(ev.merged.eigenvalues[1] - oT[0]) <= 1e-8);
    CHECK(ev.hausdorff <= 1e-7);
    for (std::size_t i = 0; i < ev.grid_t.size(); ++i)
        CHECK(ev.factorization_residual[i] <= 1e-8 * (1.0 + std::abs(ev.w_even[i])));

    // tau_1 < 0 here, so the even count doubles the Neumann count
    CHECK(ev.n_even == 2 * 1);

    const EvenLineResult ez = even_line_spectrum(Potential::zero());
    CHECK(ez.n_even == 0);
    CHECK(ez.hausdorff == 0.0);
    for (double r : ez.factorization_residual) CHECK(r <= 1e-10);
}

TEST_CASE("threshold flag raised when the characteristic value vanishes at k=0") {
    const Potential p = corpus_potential(42, 0);
    Propagator base(p);
    const SpectrumTable nu = interval_eigenvalues(base, Family::neumann, 1);
    // move nu_0 a hair above zero: no bound state, but the scaled value at
    // k = 0 sits below the threshold window
    const Potential crit = p.shifted(nu.entries[0].value - 1e-10);
    const DiscreteSpectrum spec = halfline_neumann_spectrum(crit);
    CHECK(spec.size() == 0);
    CHECK(spec.threshold_resonance);
}
