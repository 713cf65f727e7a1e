#pragma once

#include <stdexcept>
#include <string>

namespace spectral {

/// Base class for numerical failures of the solvers.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A bracketing or refinement iteration failed to shrink.
class ConvergenceFailure : public SolverError {
public:
    using SolverError::SolverError;
};

/// Sign pattern or root count inconsistent with the interlacing structure the
/// search relies on. Reported with diagnostics, never auto-repaired.
class BracketAnomaly : public SolverError {
public:
    using SolverError::SolverError;
};

/// Contour winding count did not settle on an integer after subdivision.
class WindingAmbiguity : public SolverError {
public:
    using SolverError::SolverError;
};

/// Invalid input file content; carries the offending field name.
class ParseError : public std::invalid_argument {
public:
    ParseError(std::string field, const std::string& message)
        : std::invalid_argument("field '" + field + "': " + message), field_(std::move(field)) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

} // namespace spectral
