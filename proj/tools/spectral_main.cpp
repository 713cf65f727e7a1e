#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spectral/bounds.hpp"
#include "spectral/errors.hpp"
#include "spectral/interval.hpp"
#include "spectral/io.hpp"
#include "spectral/oracle.hpp"
#include "spectral/resonances.hpp"
#include "spectral/scattering.hpp"
#include "spectral/verify.hpp"

namespace {

using namespace spectral;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSolver = 2;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ParseError("out", "cannot write '" + out_path + "'");
    out << text;
}

std::vector<Family> parse_families(const std::string& list, bool& periodic) {
    periodic = false;
    std::vector<Family> fams;
    std::string item;
    std::istringstream is(list);
    while (std::getline(is, item, ',')) {
        if (item == "dirichlet") fams.push_back(Family::dirichlet);
        else if (item == "neumann") fams.push_back(Family::neumann);
        else if (item == "mixed01") fams.push_back(Family::mixed01);
        else if (item == "mixed10") fams.push_back(Family::mixed10);
        else if (item == "periodic") periodic = true;
        else if (item == "all") {
            fams = {Family::dirichlet, Family::neumann, Family::mixed01, Family::mixed10};
            periodic = true;
        } else
            throw ParseError("families", "unknown family '" + item + "'");
    }
    return fams;
}

Rect parse_rect(const std::string& text) {
    Rect r{};
    double v[4];
    int i = 0;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        if (i >= 4) throw ParseError("rect", "expected four comma-separated numbers");
        try {
            v[i++] = std::stod(item);
        } catch (const std::exception&) {
            throw ParseError("rect", "entry '" + item + "' is not a number");
        }
    }
    if (i != 4) throw ParseError("rect", "expected four comma-separated numbers");
    r = {v[0], v[1], v[2], v[3]};
    if (!(r.x0 < r.x1) || !(r.y0 < r.y1))
        throw ParseError("rect", "expected x0 < x1 and y0 < y1");
    return r;
}

int cmd_spectra(const std::string& potential_path, const std::string& families, int n_max,
                const std::string& format, const std::string& out_path) {
    const Potential p = load_potential(potential_path);
    bool with_periodic = false;
    const std::vector<Family> fams = parse_families(families, with_periodic);
    Propagator prop(p);
    std::vector<SpectrumTable> tables;
    for (Family f : fams) tables.push_back(interval_eigenvalues(prop, f, n_max));
    PeriodicSpectrum ps;
    if (with_periodic) ps = periodic_spectrum(prop, n_max);
    const std::string text = (format == "csv")
                                 ? spectra_to_csv_text(tables, with_periodic ? &ps : nullptr)
                                 : spectra_to_json_text(tables, with_periodic ? &ps : nullptr);
    write_output(text, out_path);
    return kExitOk;
}

int cmd_verify(const std::string& potential_path, const std::vector<std::uint64_t>& random,
               const VerifyOptions& opts, const std::string& out_path) {
    std::vector<VerificationReport> reports;
    if (!random.empty()) {
        reports = verify_random(random[0], static_cast<int>(random[1]), opts);
    } else {
        reports.push_back(verify_potential(load_potential(potential_path), opts));
    }
    std::string text;
    if (reports.size() == 1) {
        text = report_to_json_text(reports[0]);
    } else {
        text = "[\n";
        for (std::size_t i = 0; i < reports.size(); ++i) {
            text += report_to_json_text(reports[i]);
            if (i + 1 < reports.size()) text += ",";
            text += "\n";
        }
        text += "]";
    }
    write_output(text, out_path);
    for (const auto& r : reports)
        if (r.has_fail()) return kExitSolver;
    return kExitOk;
}

int cmd_resonances(const std::string& potential_path, const std::string& rect_text, bool upper,
                   const std::string& out_path, unsigned jitter_seed, double tol) {
    const Potential p = load_potential(potential_path);
    const Rect rect = parse_rect(rect_text);
    if (rect.y1 > 0.0 && !upper)
        throw ParseError("rect", "rectangle reaches the upper half plane; pass --upper to allow");
    Propagator prop(p);
    const ResonanceSet rset = find_resonances(prop, rect, jitter_seed);
    const auto loc = check_localization(prop, rset, tol);
    write_output(resonances_to_json_text(rset, loc), out_path);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral: eigenvalues, resonances and bound checks for unit-interval potentials"};
    app.require_subcommand(1);

    std::string potential_path, out_path, families = "all", format = "json";
    std::string rect_text = "-10,10,-6,0";
    int n_max = 10;
    double tol = 1e-9;
    bool with_oracle = false, upper = false;
    unsigned jitter_seed = 0;
    std::vector<std::uint64_t> random_args;

    auto* sp = app.add_subcommand("spectra", "interval and periodic eigenvalue tables");
    sp->add_option("--potential", potential_path, "potential spec file (JSON)")->required();
    sp->add_option("--families", families, "comma list: dirichlet,neumann,mixed01,mixed10,periodic,all");
    sp->add_option("--n-max", n_max, "eigenvalues per family");
    sp->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sp->add_option("--out", out_path, "output file (default stdout)");

    auto* vf = app.add_subcommand("verify", "run the verification pipeline");
    vf->add_option("--potential", potential_path, "potential spec file (JSON)");
    vf->add_option("--random", random_args, "SEED COUNT: run the seeded corpus")->expected(2);
    vf->add_option("--n-max", n_max, "chain depth");
    vf->add_option("--tol", tol, "margin tolerance");
    vf->add_flag("--oracle", with_oracle, "include the finite-difference cross-check");
    vf->add_option("--rect", rect_text, "resonance rectangle x0,x1,y0,y1");
    vf->add_option("--seed", jitter_seed, "subdivision jitter seed");
    vf->add_option("--out", out_path, "output file (default stdout)");

    auto* rs = app.add_subcommand("resonances", "zeros of the half-line characteristic function");
    rs->add_option("--potential", potential_path, "potential spec file (JSON)")->required();
    rs->add_option("--rect", rect_text, "search rectangle x0,x1,y0,y1");
    rs->add_flag("--upper", upper, "allow the rectangle to reach the upper half plane");
    rs->add_option("--seed", jitter_seed, "subdivision jitter seed");
    rs->add_option("--tol", tol, "margin tolerance");
    rs->add_option("--format", format, "json")->check(CLI::IsMember({"json"}));
    rs->add_option("--out", out_path, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sp->parsed()) return cmd_spectra(potential_path, families, n_max, format, out_path);
        if (vf->parsed()) {
            if (random_args.empty() && potential_path.empty())
                throw ParseError("potential", "pass --potential FILE or --random SEED COUNT");
            VerifyOptions opts;
            opts.n_max = n_max;
            opts.tol = tol;
            opts.with_oracle = with_oracle;
            opts.rect = parse_rect(rect_text);
            opts.jitter_seed = jitter_seed;
            return cmd_verify(potential_path, random_args, opts, out_path);
        }
        if (rs->parsed())
            return cmd_resonances(potential_path, rect_text, upper, out_path, jitter_seed, tol);
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitInput;
    } catch (const SolverError& err) {
        std::cerr << "solver error: " << err.what() << "\n";
        return kExitSolver;
    }
    return kExitInput;
}
