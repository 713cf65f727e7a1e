#pragma once

#include <string>
#include <vector>

namespace spectral {

enum class CheckStatus { pass, fail, degenerate, skipped };

std::string to_string(CheckStatus s);
CheckStatus check_status_from_string(const std::string& s);

/// One verified inequality or identity instance. margin = right - left, with
/// the convention that the statement asserts left <= right (or < for strict
/// checks). Skipped entries record an unmet hypothesis in note.
struct ReportEntry {
    std::string theorem;  // check id, e.g. "bx", "D2", "nu1"
    std::string instance; // human-readable statement instance
    double left = 0.0;
    double right = 0.0;
    double margin = 0.0;
    double tolerance = 0.0;
    CheckStatus status = CheckStatus::pass;
    std::string note;

    bool operator==(const ReportEntry&) const = default;
};

/// Strict inequality left < right: margin must clear the tolerance; a margin
/// inside the tolerance band is flagged degenerate rather than failed.
ReportEntry strict_entry(std::string theorem, std::string instance, double left, double right,
                         double tol);

/// Non-strict inequality left <= right: passes at margin >= -tol.
ReportEntry nonstrict_entry(std::string theorem, std::string instance, double left, double right,
                            double tol);

/// Exact integer identity.
ReportEntry integer_entry(std::string theorem, std::string instance, long left, long right);

struct VerificationReport {
    std::string potential_echo; // JSON text of the potential definition
    std::string settings_echo;  // JSON text of the solver settings
    std::vector<ReportEntry> entries;

    long count(CheckStatus s) const;
    bool has_fail() const { return count(CheckStatus::fail) > 0; }

    bool operator==(const VerificationReport&) const = default;
};

} // namespace spectral
