#include "spectral/corpus.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace spectral {
namespace rng {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double uniform(std::uint64_t& state, double lo, double hi) {
    const double u = (splitmix64(state) >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

} // namespace rng

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index, std::uint64_t salt) {
    std::uint64_t s = seed ^ (0x51c64b3d693e27adull * (index + 1)) ^ (salt * 0xd6e8feb86659fd93ull);
    rng::splitmix64(s);
    return s;
}

std::vector<double> equal_grid(int cells) {
    std::vector<double> bp(cells + 1);
    for (int i = 0; i <= cells; ++i) bp[i] = double(i) / cells;
    bp.front() = 0.0;
    bp.back() = 1.0;
    return bp;
}

} // namespace

Potential corpus_potential(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = mix_seed(seed, index, 1);
    std::vector<double> values(8);
    for (double& v : values) v = rng::uniform(s, -30.0, 20.0);
    return Potential::piecewise_constant(equal_grid(8), values);
}

Potential monotone_staircase(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = mix_seed(seed, index, 2);
    std::vector<double> values(8);
    for (double& v : values) v = rng::uniform(s, -30.0, 20.0);
    std::sort(values.begin(), values.end());
    return Potential::piecewise_constant(equal_grid(8), values);
}

Potential smooth_meanzero(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = mix_seed(seed, index, 3);
    const int cells = 8;
    const double w = 1.0 / cells;
    std::array<double, 9> g{}, d{};
    for (int i = 0; i < cells; ++i) {
        g[i] = rng::uniform(s, -25.0, 25.0);
        d[i] = rng::uniform(s, -80.0, 80.0);
    }
    g[cells] = g[0]; // C^1 across the period
    d[cells] = d[0];
    std::vector<std::array<double, 4>> coeffs(cells);
    for (int i = 0; i < cells; ++i) {
        const double slope = (g[i + 1] - g[i]) / w;
        coeffs[i][0] = g[i];
        coeffs[i][1] = d[i];
        coeffs[i][2] = (3.0 * slope - 2.0 * d[i] - d[i + 1]) / w;
        coeffs[i][3] = (d[i] + d[i + 1] - 2.0 * slope) / (w * w);
    }
    Potential p = Potential::piecewise_poly(equal_grid(cells), std::move(coeffs));
    return p.shifted(p.mean());
}

} // namespace spectral
