#include "solenoid/report.hpp"

#include <sstream>

namespace solenoid::report {

using dirac::Cutoff;
using dirac::SpectrumMultiset;
using lattice::Tower;

namespace {

json vec_json(const RatVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(rat_to_string(x));
    return a;
}

const char* kind_name(intlat::CertificateKind k) {
    switch (k) {
        case intlat::CertificateKind::FrobeniusContraction: return "frobenius-contraction";
        case intlat::CertificateKind::SchurStable: return "schur-stable";
        case intlat::CertificateKind::RootOutside: return "root-outside";
        default: return "unit-modulus root";
    }
}

Cutoff parse_cutoff(const SpectrumOptions& opt) {
    if (!opt.freq_radius.empty())
        return Cutoff::freq(rat_from_string(opt.freq_radius));
    return Cutoff::lambda(rat_from_string(opt.cutoff));
}

} // namespace

json analyze_matrix(const std::string& matrix) {
    intlat::IntMatrix B = intlat::parse_matrix(matrix);
    json out{{"schema", 1}, {"matrix", B.to_string()}, {"p", B.dim()}};
    out["det"] = B.det().str();
    auto snf = intlat::smith_normal_form(B);
    json factors = json::array();
    for (const auto& d : snf.invariant_factors()) factors.push_back(d.str());
    out["smith"] = {{"S", snf.S.to_string()},
                    {"T", snf.T.to_string()},
                    {"D", snf.D.to_string()},
                    {"factors", factors}};
    out["cofactor"] = intlat::cofactor_matrix(B).to_string();
    out["inverse_transpose"] = intlat::inverse_transpose(B).to_string();

    auto exp = intlat::purely_expanding(B);
    json e{{"purely_expanding", exp.purely_expanding},
           {"certificate", kind_name(exp.kind)},
           {"spectral_radius_hint", exp.spectral_radius_hint}};
    if (exp.contraction_exponent >= 0) {
        e["contraction_exponent"] = exp.contraction_exponent;
        e["contraction_norm_sq"] = rat_to_string(exp.contraction_norm_sq);
    }
    if (exp.schur_step >= 0) e["schur_step"] = exp.schur_step;
    if (exp.tail_bound) e["tail_bound"] = rat_to_string(*exp.tail_bound);
    json norms = json::array();
    for (size_t i = 0; i < exp.norm_sq_sequence.size() && i < 16; ++i)
        norms.push_back(rat_to_string(exp.norm_sq_sequence[i]));
    e["norm_sq_sequence"] = norms;
    out["expansion"] = e;
    return out;
}

json group_report(const std::string& matrix) {
    intlat::IntMatrix B = intlat::parse_matrix(matrix);
    auto G = lattice::enumerate_quotient(B);
    json out{{"schema", 1}, {"matrix", B.to_string()}};
    out["order"] = G.order.str();
    json factors = json::array();
    for (const auto& d : G.factors) factors.push_back(d.str());
    out["factors"] = factors;
    json dual = json::array(), grp = json::array();
    for (const auto& s : G.dual_reps) dual.push_back(vec_json(s));
    for (const auto& z : G.group_reps) {
        json a = json::array();
        for (const auto& x : z) a.push_back(x.str());
        grp.push_back(a);
    }
    out["dual_reps"] = dual;
    out["group_reps"] = grp;
    auto schur = lattice::schur_orthogonality_check(G);
    out["schur_orthogonality"] = schur.ok;
    if (!schur.ok) out["schur_offender"] = *schur.offending_group_index;
    return out;
}

dirac::SpectrumMultiset build_torus_spectrum(const SpectrumOptions& opt) {
    Tower tw(intlat::parse_matrix(opt.matrix));
    Cutoff cut = parse_cutoff(opt);
    if (opt.check_equivalence) return dirac::assembled_cover_spectrum(tw, opt.level, cut);
    return dirac::torus_spectrum(tw, opt.level, cut);
}

json spectrum_report(const SpectrumOptions& opt) {
    SpectrumMultiset spec = build_torus_spectrum(opt);
    json out{{"schema", 1},
             {"model", spec.model},
             {"matrix", opt.matrix},
             {"level", opt.level},
             {"cutoff", spec.cutoff}};
    out["equivalence_checked"] = opt.check_equivalence;
    json lines = json::array();
    for (const auto& l : spec.lines) {
        json jl{{"value", l.value},
                {"multiplicity", l.multiplicity},
                {"weight", rat_to_string(l.weight)}};
        if (l.norm_sq) jl["norm_sq"] = rat_to_string(*l.norm_sq);
        lines.push_back(jl);
    }
    out["lines"] = lines;
    out["total_weight"] = rat_to_string(spec.total_weight());
    return out;
}

std::string spectrum_csv(const SpectrumMultiset& spec) {
    std::ostringstream os;
    json meta{{"schema", 1}, {"model", spec.model}, {"cutoff", spec.cutoff}};
    os << "# " << meta.dump() << "\n";
    os << "value,multiplicity,weight_num,weight_den\n";
    os.precision(12);
    for (const auto& l : spec.lines)
        os << l.value << "," << l.multiplicity << "," << numerator(l.weight).str()
           << "," << denominator(l.weight).str() << "\n";
    return os.str();
}

json zeta_report(const std::string& matrix, int level, const std::string& cutoff,
                 const std::vector<double>& s_values) {
    SpectrumOptions opt;
    opt.matrix = matrix;
    opt.level = level;
    opt.cutoff = cutoff;
    SpectrumMultiset spec = build_torus_spectrum(opt);
    json out{{"schema", 1}, {"matrix", matrix}, {"level", level}, {"cutoff", spec.cutoff}};
    json rows = json::array();
    for (double s : s_values) {
        rows.push_back({{"s", s},
                        {"abs_power", spectral::zeta_truncated(spec, s, spectral::ZetaForm::AbsPower)},
                        {"resolvent", spectral::zeta_truncated(spec, s, spectral::ZetaForm::Resolvent)}});
    }
    out["zeta"] = rows;
    auto fitable = spec.lines.size() >= 64;
    if (fitable) {
        try {
            auto fit = spectral::dimension_and_residue(spec);
            out["dimension_fit"] = {{"d_hat", fit.d_hat},
                                    {"c_hat", fit.c_hat},
                                    {"residue", fit.residue},
                                    {"window_steps", fit.window_steps},
                                    {"fit_residual", fit.fit_residual}};
        } catch (const PreconditionError&) {
        }
    }
    return out;
}

json radii_report(const std::string& model, const std::string& matrix,
                  const std::string& theta, int uhf_r, const std::string& uhf_s,
                  int k_max) {
    json out{{"schema", 1}, {"model", model}, {"k_max", k_max}};
    dirac::RadiiTable table;
    if (model == "torus") {
        Tower tw(intlat::parse_matrix(matrix));
        table = dirac::radii_divergence_torus(tw, k_max);
        out["matrix"] = matrix;
    } else if (model == "crossed") {
        Tower tw(intlat::parse_matrix(matrix));
        table = dirac::radii_divergence_crossed(tw, k_max);
        out["matrix"] = matrix;
    } else if (model == "nctorus") {
        Tower tw(intlat::parse_matrix(matrix));
        table = dirac::radii_divergence_nctorus(tw, nctorus::parse_angle(theta), k_max);
        out["matrix"] = matrix;
        out["theta"] = theta;
    } else if (model == "uhf") {
        dirac::UhfParams u{uhf_r, rat_from_string(uhf_s), 0};
        std::vector<std::vector<std::complex<double>>> b(
            uhf_r, std::vector<std::complex<double>>(uhf_r, 0.0));
        b[0][0] = 1.0;  // e_11 witness
        table = dirac::radii_divergence_uhf(u, b, k_max);
        out["r"] = uhf_r;
        out["s"] = uhf_s;
    } else {
        throw PreconditionError("unknown radii model '" + model + "'");
    }
    out["purely_expanding"] = table.purely_expanding;
    json rows = json::array();
    bool increasing = true;
    for (size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        rows.push_back({{"k", r.k},
                        {"lipnorm", r.lipnorm},
                        {"quotient_norm", r.quotient_norm}});
        if (i > 0 && table.rows[i].quotient_norm <= table.rows[i - 1].quotient_norm)
            increasing = false;
    }
    out["rows"] = rows;
    out["strictly_increasing"] = increasing;
    return out;
}

json nctorus_report(const std::string& theta, const std::string& matrix) {
    intlat::IntMatrix B = intlat::parse_matrix(matrix);
    auto th = nctorus::parse_angle(theta);
    auto rep = nctorus::fixed_point_identities(B, th);
    json out{{"schema", 1}, {"theta", theta}, {"matrix", matrix}};
    out["clock_commutation"] = rep.clock_commutation;
    out["weyl_power_law"] = rep.weyl_power_law;
    out["u_fixed_point"] = rep.u_fixed_point;
    out["v_fixed_point"] = rep.v_fixed_point;
    out["theta_scaling"] = rep.theta_scaling;
    out["base_scaling"] = rep.base_scaling;
    out["deck_invariance"] = rep.deck_invariance;
    out["all_identities"] = rep.all();
    if (!rep.first_mismatch.empty()) out["first_mismatch"] = rep.first_mismatch;
    Rat scaled = Rat(B.det()) * th.value();
    out["scaling_phase"] = rat_to_string(rat_frac(scaled));
    return out;
}

json uhf_report(int r, const std::string& s, const std::vector<int>& levels,
                int k_max) {
    Rat sv = rat_from_string(s);
    json out{{"schema", 1}, {"r", r}, {"s", s}, {"k_max", k_max}};
    json lv = json::array();
    double residue0 = 0;
    bool residues_equal = true;
    for (size_t i = 0; i < levels.size(); ++i) {
        int n = levels[i];
        auto cf = spectral::uhf_closed_form(r, sv, n);
        auto spec = dirac::uhf_spectrum({r, sv, n}, k_max);
        json weights = json::array();
        for (const auto& l : spec.lines)
            weights.push_back({{"value", l.value}, {"weight", rat_to_string(l.weight)}});
        double t_probe = to_double(cf.abscissa) + 1.0;
        json jl{{"level", n},
                {"abscissa", rat_to_string(cf.abscissa)},
                {"residue", cf.residue},
                {"zeta_closed_at_abscissa_plus_1", cf.zeta(t_probe)},
                {"zeta_truncated_at_abscissa_plus_1",
                 spectral::zeta_truncated(spec, t_probe, spectral::ZetaForm::AbsPower)},
                {"lines", weights}};
        lv.push_back(jl);
        if (i == 0) residue0 = cf.residue;
        else residues_equal = residues_equal && cf.residue == residue0;
    }
    out["levels"] = lv;
    out["residues_equal"] = residues_equal;
    return out;
}

json appendix_report(int dim, int trials, int grid, std::uint64_t seed) {
    json out{{"schema", 1}, {"dim", dim}, {"trials", trials}, {"seed", seed}};
    auto pert = spectral::perturbation_check(dim, grid, trials, seed);
    out["perturbation"] = {{"trials", pert.trials},
                           {"failures", pert.failures},
                           {"worst_gap", pert.worst_gap},
                           {"ok", pert.ok()}};
    Tower tw(intlat::parse_matrix("2,0;0,2"));
    auto base = dirac::torus_spectrum(tw, 0, Cutoff::freq(Rat(30)));
    auto cover = dirac::torus_spectrum(tw, 1, Cutoff::freq(Rat(30)));
    auto rs = spectral::residue_stability_check(base, cover, 2.0);
    out["residue_stability"] = {{"base_residue", rs.base_residue},
                                {"perturbed_residue", rs.perturbed_residue},
                                {"difference_rel", rs.difference_rel},
                                {"same_res_bound_ok", rs.same_res_bound_ok}};
    return out;
}

json full_report(std::uint64_t seed) {
    json out{{"schema", 1}, {"seed", seed}};
    out["analyze"] = json::array();
    for (const char* m : {"2,0;0,2", "1,-1;1,1", "2,1;0,2"}) {
        json entry = analyze_matrix(m);
        entry["group"] = group_report(m);
        SpectrumOptions opt;
        opt.matrix = m;
        opt.level = 2;
        opt.freq_radius = "4";
        opt.check_equivalence = true;
        dirac::SpectrumMultiset spec = build_torus_spectrum(opt);  // throws on mismatch
        entry["cover_equivalence"] = {{"level", 2},
                                      {"lines", spec.lines.size()},
                                      {"total_weight", rat_to_string(spec.total_weight())}};
        out["analyze"].push_back(entry);
    }
    out["nctorus"] = json::array();
    for (const char* m : {"2,0;0,2", "2,1;0,2"})
        out["nctorus"].push_back(nctorus_report("1/3", m));
    out["uhf"] = uhf_report(2, "1", {0, 1, 2, 3}, 8);
    out["radii_torus"] = radii_report("torus", "2,0;0,2", "1/3", 2, "1", 10);
    out["appendix"] = appendix_report(24, 20, 60, seed);
    return out;
}

} // namespace solenoid::report
