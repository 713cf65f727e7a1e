#pragma once

#include <string>
#include <vector>

#include "spectral/interval.hpp"
#include "spectral/potential.hpp"
#include "spectral/report.hpp"
#include "spectral/resonances.hpp"
#include "spectral/scattering.hpp"

namespace spectral {

/// Potential spec files:
///   {"kind": "piecewise_constant", "breakpoints": [...], "values": [...]}
///   {"kind": "piecewise_poly", "breakpoints": [...], "coeffs": [[c0,c1,c2,c3], ...]}
/// Malformed content raises ParseError naming the offending field.
Potential potential_from_json_text(const std::string& text);
Potential load_potential(const std::string& path);
std::string potential_to_json_text(const Potential& p);

std::string report_to_json_text(const VerificationReport& report, int indent = 2);
VerificationReport report_from_json_text(const std::string& text);

/// Spectrum tables as JSON or CSV (columns family,index,eigenvalue,residual).
/// Periodic rows use families "periodic-" and "periodic+"; the lowest edge is
/// emitted as ("periodic+", 0).
std::string spectra_to_json_text(const std::vector<SpectrumTable>& tables,
                                 const PeriodicSpectrum* periodic, int indent = 2);
std::string spectra_to_csv_text(const std::vector<SpectrumTable>& tables,
                                const PeriodicSpectrum* periodic);

std::string resonances_to_json_text(const ResonanceSet& rset,
                                    const std::vector<ReportEntry>& localization, int indent = 2);

/// Structural validation against the JSON-Schema subset shipped in schemas/
/// (type, required, properties, items, enum). Returns an empty string when
/// the document conforms, else the first violation found.
std::string validate_against_schema(const std::string& schema_text,
                                    const std::string& document_text);

} // namespace spectral
