#include "spectral/report.hpp"

#include <stdexcept>

namespace spectral {

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::degenerate: return "degenerate";
        case CheckStatus::skipped: return "skipped";
    }
    return "?";
}

CheckStatus check_status_from_string(const std::string& s) {
    if (s == "pass") return CheckStatus::pass;
    if (s == "fail") return CheckStatus::fail;
    if (s == "degenerate") return CheckStatus::degenerate;
    if (s == "skipped") return CheckStatus::skipped;
    throw std::invalid_argument("unknown status: " + s);
}

ReportEntry strict_entry(std::string theorem, std::string instance, double left, double right,
                         double tol) {
    ReportEntry e;
    e.theorem = std::move(theorem);
    e.instance = std::move(instance);
    e.left = left;
    e.right = right;
    e.margin = right - left;
    e.tolerance = tol;
    if (e.margin > tol) e.status = CheckStatus::pass;
    else if (e.margin < -tol) e.status = CheckStatus::fail;
    else e.status = CheckStatus::degenerate;
    return e;
}

ReportEntry nonstrict_entry(std::string theorem, std::string instance, double left, double right,
                            double tol) {
    ReportEntry e;
    e.theorem = std::move(theorem);
    e.instance = std::move(instance);
    e.left = left;
    e.right = right;
    e.margin = right - left;
    e.tolerance = tol;
    e.status = (e.margin >= -tol) ? CheckStatus::pass : CheckStatus::fail;
    return e;
}

ReportEntry integer_entry(std::string theorem, std::string instance, long left, long right) {
    ReportEntry e;
    e.theorem = std::move(theorem);
    e.instance = std::move(instance);
    e.left = static_cast<double>(left);
    e.right = static_cast<double>(right);
    e.margin = e.right - e.left;
    e.tolerance = 0.0;
    e.status = (left == right) ? CheckStatus::pass : CheckStatus::fail;
    return e;
}

long VerificationReport::count(CheckStatus s) const {
    long n = 0;
    for (const auto& e : entries)
        if (e.status == s) ++n;
    return n;
}

} // namespace spectral
