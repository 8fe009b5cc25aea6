#include "solenoid/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace solenoid;
using nlohmann::json;

namespace {

void emit(const json& j, const std::string& output) {
    if (output.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream os(output);
    if (!os) throw PreconditionError("cannot write '" + output + "'");
    os << j.dump(2) << "\n";
}

void emit_text(const std::string& text, const std::string& output) {
    if (output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(output);
    if (!os) throw PreconditionError("cannot write '" + output + "'");
    os << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"solenoid: exact covering-tower spectral computations"};
    app.require_subcommand(1);

    std::string matrix = "2,0;0,2", cutoff = "40", freq_radius, output;
    std::string theta = "1/3", model = "torus", s_list = "2.5,3", uhf_s = "1";
    std::string uhf_levels = "0,1", format = "json";
    int level = 1, kmax = 10, uhf_r = 2, dim = 24, trials = 100, grid = 100;
    std::uint64_t seed = 0;
    bool check_equivalence = false;

    app.add_option("--seed", seed, "seed for randomized checks");

    auto* analyze = app.add_subcommand("analyze", "Smith form, cofactors, expansion report");
    analyze->add_option("--matrix", matrix, "covering matrix, rows 'a,b;c,d'")->required();
    analyze->add_option("--output,-o", output);

    auto* group = app.add_subcommand("group", "deck group and dual characters");
    group->add_option("--matrix", matrix)->required();
    group->add_option("--output,-o", output);

    auto* spectrum = app.add_subcommand("spectrum", "Dirac spectrum of the covering torus");
    spectrum->add_option("--matrix", matrix)->required();
    spectrum->add_option("--level", level);
    spectrum->add_option("--cutoff", cutoff, "eigenvalue bound Lambda");
    spectrum->add_option("--freq-radius", freq_radius, "exact frequency radius (overrides cutoff)");
    spectrum->add_flag("--check-equivalence", check_equivalence,
                       "assemble through the mode tuples and compare");
    spectrum->add_option("--format", format, "json|csv");
    spectrum->add_option("--output,-o", output);

    auto* zeta = app.add_subcommand("zeta", "truncated zeta values and dimension fit");
    zeta->add_option("--matrix", matrix)->required();
    zeta->add_option("--level", level);
    zeta->add_option("--cutoff", cutoff);
    zeta->add_option("--s-values", s_list, "comma-separated exponents");
    zeta->add_option("--output,-o", output);

    auto* radii = app.add_subcommand("radii", "Lip-norm radii divergence table");
    radii->add_option("--model", model, "torus|crossed|nctorus|uhf");
    radii->add_option("--matrix", matrix);
    radii->add_option("--theta", theta);
    radii->add_option("--r", uhf_r);
    radii->add_option("--s", uhf_s);
    radii->add_option("--kmax", kmax);
    radii->add_option("--output,-o", output);

    auto* nct = app.add_subcommand("nctorus", "rational rotation algebra identities");
    auto* nct_check = nct->add_subcommand("check", "verify the covering identities");
    nct_check->add_option("--theta", theta)->required();
    nct_check->add_option("--matrix", matrix)->required();
    nct_check->add_option("--output,-o", output);

    auto* uhf = app.add_subcommand("uhf", "Christensen-Ivan spectra and closed forms");
    uhf->add_option("--r", uhf_r);
    uhf->add_option("--s", uhf_s);
    uhf->add_option("--levels", uhf_levels, "comma-separated covering levels");
    uhf->add_option("--kmax", kmax);
    uhf->add_option("--output,-o", output);

    auto* appendix = app.add_subcommand("appendix", "counting-function lemma checks");
    appendix->add_option("--dim", dim);
    appendix->add_option("--trials", trials);
    appendix->add_option("--grid", grid);
    appendix->add_option("--output,-o", output);

    auto* rep = app.add_subcommand("report", "full battery over the default corpus");
    rep->add_option("--output,-o", output);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) emit(report::analyze_matrix(matrix), output);
        if (*group) emit(report::group_report(matrix), output);
        if (*spectrum) {
            report::SpectrumOptions opt;
            opt.matrix = matrix;
            opt.level = level;
            opt.cutoff = cutoff;
            opt.freq_radius = freq_radius;
            opt.check_equivalence = check_equivalence;
            if (format == "csv")
                emit_text(report::spectrum_csv(report::build_torus_spectrum(opt)), output);
            else
                emit(report::spectrum_report(opt), output);
        }
        if (*zeta) {
            std::vector<double> ss;
            std::stringstream sstr(s_list);
            std::string tok;
            while (std::getline(sstr, tok, ',')) ss.push_back(std::stod(tok));
            emit(report::zeta_report(matrix, level, cutoff, ss), output);
        }
        if (*radii) emit(report::radii_report(model, matrix, theta, uhf_r, uhf_s, kmax), output);
        if (*nct) {
            if (!*nct_check) throw PreconditionError("usage: nctorus check --theta p/q --matrix ...");
            emit(report::nctorus_report(theta, matrix), output);
        }
        if (*uhf) {
            std::vector<int> lv;
            std::stringstream ls(uhf_levels);
            std::string tok;
            while (std::getline(ls, tok, ',')) lv.push_back(std::stoi(tok));
            emit(report::uhf_report(uhf_r, uhf_s, lv, kmax), output);
        }
        if (*appendix) emit(report::appendix_report(dim, trials, grid, seed), output);
        if (*rep) emit(report::full_report(seed), output);
    } catch (const InvariantViolation& e) {
        json err{{"schema", 1}, {"error", "invariant-violation"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        json err{{"schema", 1}, {"error", "precondition"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 3;
    } catch (const std::exception& e) {
        json err{{"schema", 1}, {"error", "internal"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 3;
    }
    return 0;
}
