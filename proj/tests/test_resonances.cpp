#include <doctest.h>

#include <cmath>

#include "spectral/corpus.hpp"
#include "spectral/resonances.hpp"

using namespace spectral;

TEST_CASE("free potential: no zeros anywhere") {
    Propagator prop(Potential::zero());
    CHECK(count_zeros(prop, {-5.0, 5.0, -4.0, 0.0}) == 0);
    CHECK(count_zeros(prop, {-2.0, 2.0, -1.0, 3.0}) == 0);
    const ResonanceSet rs = find_resonances(prop, {-8.0, 8.0, -6.0, 0.0});
    CHECK(rs.zeros.empty());
    CHECK(rs.total_count == 0);
}

TEST_CASE("constant well: counts match enumeration and the bound-state momentum") {
    Propagator prop(Potential::constant(-4.0));
    const ResonanceSet rs = find_resonances(prop, {-3.0, 3.0, -3.0, 0.0});
    long mult = 0;
    for (const auto& z : rs.zeros) mult += z.multiplicity;
    CHECK(mult == rs.total_count);
    CHECK(count_zeros(prop, {-3.0, 3.0, -3.0, 0.0}) == rs.total_count);

    // upper half plane: exactly the bound-state momentum i t_1, t_1 ~ 0.638
    CHECK(count_zeros(prop, {-0.5, 0.5, 0.3, 1.2}) == 1);
    CHECK(count_zeros(prop, {-0.5, 0.5, 1.2, 2.5}) == 0);
}

TEST_CASE("mirror symmetry of off-axis zeros on the corpus") {
    for (int i : {0, 1, 2}) {
        Propagator prop(corpus_potential(42, i));
        const ResonanceSet rs = find_resonances(prop, {-8.0, 8.0, -5.0, 0.0});
        for (const auto& z : rs.zeros) {
            if (z.on_axis) continue;
            const Complex mirror(-z.k.real(), z.k.imag());
            bool found = false;
            for (const auto& w : rs.zeros)
                if (std::abs(w.k - mirror) <= 1e-8 * (1.0 + std::abs(mirror))) found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("argument principle total equals the multiplicity sum") {
    for (int i = 0; i < 10; ++i) {
        Propagator prop(corpus_potential(42, i));
        const ResonanceSet rs = find_resonances(prop, {-10.0, 10.0, -6.0, 0.0});
        long mult = 0;
        for (const auto& z : rs.zeros) mult += z.multiplicity;
        CHECK(mult == rs.total_count);
        for (const auto& z : rs.zeros) CHECK(z.residual <= 1e-6);
    }
}

TEST_CASE("deep well: odd axis count on the inner interval and localization") {
    const Potential p = Potential::constant(-40.0);
    Propagator prop(p);
    const ResonanceSet rs = find_resonances(prop, {-10.0, 10.0, -6.5, 0.0});
    const auto axis = rs.axis_zeros();

    // two bound states here, so the interval between their momenta must hold
    // an odd number of axis zeros
    const auto loc = check_localization(prop, rs);
    bool parity_checked = false;
    for (const auto& e : loc) {
        CHECK(e.status != CheckStatus::fail);
        if (e.theorem == "cond-J") parity_checked = true;
    }
    CHECK(parity_checked);

    // localization brackets annotate every interval-resident axis zero
    for (const auto& z : axis) {
        if (z.interval_index >= 1) {
            const double ksq = -(z.k.imag() * z.k.imag());
            CHECK(z.bracket_lo < ksq);
            CHECK(ksq < z.bracket_hi);
        }
    }
    // the 1-d scan and the 2-d quadtree see the same axis zeros
    for (const auto& z : axis) CHECK(std::abs(z.k.real()) <= 1e-8);
}

TEST_CASE("no zeros on the real line away from the origin") {
    for (int i : {0, 3}) {
        Propagator prop(corpus_potential(42, i));
        double smallest = 1e300;
        for (int s : {-1, 1}) {
            for (double x = 0.01; x <= 20.0; x += 1e-3) {
                const Complex k(s * x, 0.0);
                const TransferMatrix m = prop.matrix(k * k);
                const Complex psi = m.dy2 - Complex(0.0, 1.0) * k * m.y2;
                smallest = std::min(smallest, std::abs(psi));
            }
        }
        CHECK(smallest > 1e-6);
    }
}

TEST_CASE("rectangles reaching the upper half plane require no special handling here") {
    // count_zeros works on any rectangle; the CLI gate for --upper is tested
    // in the CLI suite
    Propagator prop(Potential::constant(-4.0));
    CHECK(count_zeros(prop, {-1.0, 1.0, -1.0, 1.0}) >= 1);
}
