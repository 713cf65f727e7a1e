#pragma once

#include <cstdint>

#include "spectral/potential.hpp"

namespace spectral {

/// Seeded random potentials used by the verification commands and the test
/// suites. All generators are platform-stable (no library distributions).
///
/// corpus_potential: 8 equal cells, values uniform in [-30, 20); produces 0-3
/// bound states per case, exercising both branches of the count dichotomy.
Potential corpus_potential(std::uint64_t seed, std::uint64_t index);

/// Non-decreasing 8-cell staircase (deepest cell at the origin), the shape
/// under which the square-root counting bound applies on the half line.
Potential monotone_staircase(std::uint64_t seed, std::uint64_t index);

/// Zero-mean C^1 cubic spline with matching endpoint value and slope, so the
/// 1-periodic extension stays C^1 and the gap lengths decay fast enough for
/// the truncated gap series to meet its tail criterion.
Potential smooth_meanzero(std::uint64_t seed, std::uint64_t index);

namespace rng {
std::uint64_t splitmix64(std::uint64_t& state);
double uniform(std::uint64_t& state, double lo, double hi);
} // namespace rng

} // namespace spectral
