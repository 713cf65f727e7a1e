#include "spectral/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spectral/errors.hpp"

namespace spectral {

using nlohmann::json;

namespace {

std::string format17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json parse_json(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError(what, "not valid JSON");
    return j;
}

std::vector<double> number_array(const json& j, const char* field) {
    if (!j.is_array() || j.empty()) throw ParseError(field, "must be a non-empty array");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw ParseError(field, "entries must be numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

} // namespace

Potential potential_from_json_text(const std::string& text) {
    const json j = parse_json(text, "potential");
    if (!j.is_object()) throw ParseError("potential", "top level must be an object");
    if (!j.contains("kind") || !j["kind"].is_string())
        throw ParseError("kind", "missing or not a string");
    const std::string kind = j["kind"].get<std::string>();
    if (!j.contains("breakpoints")) throw ParseError("breakpoints", "missing");
    std::vector<double> bp = number_array(j["breakpoints"], "breakpoints");

    if (kind == "piecewise_constant") {
        if (!j.contains("values")) throw ParseError("values", "missing");
        return Potential::piecewise_constant(std::move(bp),
                                             number_array(j["values"], "values"));
    }
    if (kind == "piecewise_poly") {
        if (!j.contains("coeffs")) throw ParseError("coeffs", "missing");
        const json& jc = j["coeffs"];
        if (!jc.is_array()) throw ParseError("coeffs", "must be an array of [c0,c1,c2,c3]");
        std::vector<std::array<double, 4>> coeffs;
        for (const auto& row : jc) {
            if (!row.is_array() || row.size() != 4)
                throw ParseError("coeffs", "each cell needs exactly four coefficients");
            std::array<double, 4> c{};
            for (int i = 0; i < 4; ++i) {
                if (!row[i].is_number()) throw ParseError("coeffs", "entries must be numbers");
                c[i] = row[i].get<double>();
            }
            coeffs.push_back(c);
        }
        return Potential::piecewise_poly(std::move(bp), std::move(coeffs));
    }
    throw ParseError("kind", "must be piecewise_constant or piecewise_poly");
}

Potential load_potential(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("file", "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return potential_from_json_text(buf.str());
}

std::string potential_to_json_text(const Potential& p) {
    json j;
    j["breakpoints"] = p.breakpoints();
    if (p.kind() == PotentialKind::piecewise_constant) {
        j["kind"] = "piecewise_constant";
        std::vector<double> values;
        for (std::size_t i = 0; i < p.cell_count(); ++i) values.push_back(p.cell_coeffs(i)[0]);
        j["values"] = values;
    } else {
        j["kind"] = "piecewise_poly";
        std::vector<std::array<double, 4>> coeffs;
        for (std::size_t i = 0; i < p.cell_count(); ++i) coeffs.push_back(p.cell_coeffs(i));
        j["coeffs"] = coeffs;
    }
    return j.dump();
}

namespace {

json entry_to_json(const ReportEntry& e) {
    json j;
    j["theorem"] = e.theorem;
    j["instance"] = e.instance;
    j["left"] = e.left;
    j["right"] = e.right;
    j["margin"] = e.margin;
    j["tolerance"] = e.tolerance;
    j["status"] = to_string(e.status);
    if (!e.note.empty()) j["note"] = e.note;
    return j;
}

ReportEntry entry_from_json(const json& j) {
    ReportEntry e;
    e.theorem = j.at("theorem").get<std::string>();
    e.instance = j.at("instance").get<std::string>();
    e.left = j.at("left").get<double>();
    e.right = j.at("right").get<double>();
    e.margin = j.at("margin").get<double>();
    e.tolerance = j.at("tolerance").get<double>();
    e.status = check_status_from_string(j.at("status").get<std::string>());
    if (j.contains("note")) e.note = j["note"].get<std::string>();
    return e;
}

} // namespace

std::string report_to_json_text(const VerificationReport& report, int indent) {
    json j;
    j["metadata"]["potential"] =
        report.potential_echo.empty() ? json() : json::parse(report.potential_echo);
    j["metadata"]["settings"] =
        report.settings_echo.empty() ? json() : json::parse(report.settings_echo);
    j["entries"] = json::array();
    for (const auto& e : report.entries) j["entries"].push_back(entry_to_json(e));
    j["summary"]["pass"] = report.count(CheckStatus::pass);
    j["summary"]["fail"] = report.count(CheckStatus::fail);
    j["summary"]["degenerate"] = report.count(CheckStatus::degenerate);
    j["summary"]["skipped"] = report.count(CheckStatus::skipped);
    return j.dump(indent);
}

VerificationReport report_from_json_text(const std::string& text) {
    const json j = parse_json(text, "report");
    VerificationReport r;
    if (j.contains("metadata")) {
        if (!j["metadata"]["potential"].is_null())
            r.potential_echo = j["metadata"]["potential"].dump();
        if (!j["metadata"]["settings"].is_null())
            r.settings_echo = j["metadata"]["settings"].dump();
    }
    for (const auto& je : j.at("entries")) r.entries.push_back(entry_from_json(je));
    return r;
}

namespace {

void append_periodic_rows(const PeriodicSpectrum& ps, json& rows) {
    rows.push_back({{"family", "periodic+"},
                    {"index", 0},
                    {"eigenvalue", ps.lambda0},
                    {"residual", ps.lambda0_residual}});
    for (const auto& e : ps.edges) {
        rows.push_back({{"family", "periodic-"},
                        {"index", e.n},
                        {"eigenvalue", e.lower},
                        {"residual", e.residual}});
        rows.push_back({{"family", "periodic+"},
                        {"index", e.n},
                        {"eigenvalue", e.upper},
                        {"residual", e.residual}});
    }
}

} // namespace

std::string spectra_to_json_text(const std::vector<SpectrumTable>& tables,
                                 const PeriodicSpectrum* periodic, int indent) {
    json j;
    j["rows"] = json::array();
    for (const auto& t : tables) {
        for (const auto& e : t.entries)
            j["rows"].push_back({{"family", to_string(t.family)},
                                 {"index", e.index},
                                 {"eigenvalue", e.value},
                                 {"residual", e.residual}});
    }
    if (periodic) append_periodic_rows(*periodic, j["rows"]);
    json counts;
    for (const auto& t : tables) counts[to_string(t.family)] = t.negatives;
    if (periodic) {
        counts["periodic"] = periodic->negatives;
        json gaps = json::array();
        for (double g : periodic->gap_lengths) gaps.push_back(g);
        j["gap_lengths"] = gaps;
        j["gamma"] = periodic->gap_l2();
    }
    j["count_negative"] = counts;
    return j.dump(indent);
}

std::string spectra_to_csv_text(const std::vector<SpectrumTable>& tables,
                                const PeriodicSpectrum* periodic) {
    std::ostringstream os;
    os << "family,index,eigenvalue,residual\n";
    for (const auto& t : tables)
        for (const auto& e : t.entries)
            os << to_string(t.family) << ',' << e.index << ',' << format17(e.value) << ','
               << format17(e.residual) << '\n';
    if (periodic) {
        os << "periodic+,0," << format17(periodic->lambda0) << ','
           << format17(periodic->lambda0_residual) << '\n';
        for (const auto& e : periodic->edges) {
            os << "periodic-," << e.n << ',' << format17(e.lower) << ',' << format17(e.residual)
               << '\n';
            os << "periodic+," << e.n << ',' << format17(e.upper) << ',' << format17(e.residual)
               << '\n';
        }
    }
    return os.str();
}

std::string resonances_to_json_text(const ResonanceSet& rset,
                                    const std::vector<ReportEntry>& localization, int indent) {
    json j;
    j["region"] = {{"x0", rset.region.x0},
                   {"x1", rset.region.x1},
                   {"y0", rset.region.y0},
                   {"y1", rset.region.y1}};
    j["total_count"] = rset.total_count;
    j["zeros"] = json::array();
    for (const auto& z : rset.zeros) {
        json e;
        e["re"] = z.k.real();
        e["im"] = z.k.imag();
        e["multiplicity"] = z.multiplicity;
        e["residual"] = z.residual;
        e["on_axis"] = z.on_axis;
        if (z.interval_index >= 1) {
            e["interval"] = z.interval_index;
            e["bracket"] = {z.bracket_lo, z.bracket_hi};
        }
        j["zeros"].push_back(e);
    }
    j["localization"] = json::array();
    for (const auto& e : localization) j["localization"].push_back(entry_to_json(e));
    return j.dump(indent);
}

namespace {

std::string schema_check(const json& schema, const json& doc, const std::string& where) {
    if (schema.contains("type")) {
        const std::string t = schema["type"].get<std::string>();
        bool ok = (t == "object" && doc.is_object()) || (t == "array" && doc.is_array()) ||
                  (t == "string" && doc.is_string()) || (t == "boolean" && doc.is_boolean()) ||
                  (t == "number" && doc.is_number()) ||
                  (t == "integer" && doc.is_number_integer());
        if (!ok) return where + ": expected type " + t;
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& v : schema["enum"]) ok = ok || (v == doc);
        if (!ok) return where + ": value not in enum";
    }
    if (schema.contains("required")) {
        for (const auto& r : schema["required"])
            if (!doc.contains(r.get<std::string>()))
                return where + ": missing required field " + r.get<std::string>();
    }
    if (schema.contains("properties") && doc.is_object()) {
        for (const auto& [key, sub] : schema["properties"].items()) {
            if (!doc.contains(key)) continue;
            const std::string msg = schema_check(sub, doc[key], where + "." + key);
            if (!msg.empty()) return msg;
        }
    }
    if (schema.contains("items") && doc.is_array()) {
        std::size_t i = 0;
        for (const auto& item : doc) {
            const std::string msg =
                schema_check(schema["items"], item, where + "[" + std::to_string(i) + "]");
            if (!msg.empty()) return msg;
            ++i;
        }
    }
    return "";
}

} // namespace

std::string validate_against_schema(const std::string& schema_text,
                                    const std::string& document_text) {
    const json schema = parse_json(schema_text, "schema");
    const json doc = parse_json(document_text, "document");
    return schema_check(schema, doc, "$");
}

} // namespace spectral
