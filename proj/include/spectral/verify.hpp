#pragma once

#include <cstdint>
#include <optional>

#include "spectral/potential.hpp"
#include "spectral/report.hpp"
#include "spectral/resonances.hpp"

namespace spectral {

struct VerifyOptions {
    int n_max = 10;
    double tol = 1e-9;
    bool with_resonances = true;
    bool with_oracle = false;
    int oracle_n = 8192;
    Rect rect{-10.0, 10.0, -6.0, 0.0};
    unsigned jitter_seed = 0;

    std::string to_json_text() const;
};

/// Runs the full pipeline on one potential: interval and periodic spectra,
/// interlacing chain, half-line/line spectra with the counting identities and
/// chains, the even-extension union and factorization, axis resonances with
/// localization and parity, the counting/sum bounds, and optionally the
/// finite-difference cross-check. Solver failures become fail entries.
VerificationReport verify_potential(const Potential& p, const VerifyOptions& opts = {});

/// Seeded corpus run; reports are assembled in index order regardless of the
/// parallel schedule.
std::vector<VerificationReport> verify_random(std::uint64_t seed, int count,
                                              const VerifyOptions& opts = {},
                                              bool parallel = true);

} // namespace spectral
