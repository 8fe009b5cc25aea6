#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "solenoid/report.hpp"

using namespace solenoid;
using nlohmann::json;

TEST_CASE("analyze report") {
    json r = report::analyze_matrix("2,0;0,2");
    CHECK(r["schema"] == 1);
    CHECK(r["det"] == "4");
    CHECK(r["expansion"]["purely_expanding"] == true);
    CHECK(r["smith"]["factors"] == json::array({"2", "2"}));

    json r2 = report::analyze_matrix("2,0;0,1");
    CHECK(r2["expansion"]["purely_expanding"] == false);
    CHECK(r2["expansion"]["certificate"] == "unit-modulus root");

    json r3 = report::analyze_matrix("1,-1;1,1");
    CHECK(r3["smith"]["factors"] == json::array({"1", "2"}));
    CHECK(r3["expansion"]["purely_expanding"] == true);

    CHECK_THROWS_AS(report::analyze_matrix("1,1;1,1"), PreconditionError);
    CHECK_THROWS_AS(report::analyze_matrix("1,x;0,1"), PreconditionError);
}

TEST_CASE("group report schema") {
    json g = report::group_report("2,0;0,2");
    CHECK(g["order"] == "4");
    CHECK(g["schur_orthogonality"] == true);
    CHECK(g["dual_reps"].size() == 4);
    CHECK(g["dual_reps"][0] == json::array({"0", "0"}));
    CHECK(g["group_reps"].size() == 4);
}

TEST_CASE("spectrum report and csv") {
    report::SpectrumOptions opt;
    opt.matrix = "2,0;0,2";
    opt.level = 2;
    opt.freq_radius = "3";
    opt.check_equivalence = true;
    json s = report::spectrum_report(opt);
    CHECK(s["equivalence_checked"] == true);
    CHECK(s["lines"].size() > 4);
    CHECK(s["lines"][0]["value"] == 0.0);
    CHECK(s["lines"][0]["weight"] == "1/16");

    auto spec = report::build_torus_spectrum(opt);
    std::string csv = report::spectrum_csv(spec);
    CHECK(csv.find("value,multiplicity,weight_num,weight_den") != std::string::npos);
    CHECK(csv.find("# {") == 0);
}

TEST_CASE("reports are byte-identical for the same configuration") {
    report::SpectrumOptions opt;
    opt.matrix = "2,1;0,2";
    opt.level = 1;
    opt.cutoff = "25";
    CHECK(report::spectrum_report(opt).dump() == report::spectrum_report(opt).dump());
    CHECK(report::full_report(0).dump() == report::full_report(0).dump());
}

TEST_CASE("zeta report carries a dimension fit at large cutoffs") {
    json z = report::zeta_report("2,0;0,2", 0, "120", {2.5, 3.0});
    CHECK(z["zeta"].size() == 2);
    double za = z["zeta"][0]["abs_power"];
    CHECK(za > 0);
    REQUIRE(z.contains("dimension_fit"));
    double d = z["dimension_fit"]["d_hat"];
    CHECK(std::abs(d - 2.0) < 0.2);
}

TEST_CASE("radii report") {
    json r = report::radii_report("torus", "2,0;0,2", "1/3", 2, "1", 10);
    CHECK(r["strictly_increasing"] == true);
    CHECK(r["purely_expanding"] == true);
    CHECK(r["rows"].size() == 11);
    double q10 = r["rows"][10]["quotient_norm"];
    CHECK(q10 == doctest::Approx(1024.0 / (2 * M_PI)).epsilon(1e-12));

    json u = report::radii_report("uhf", "", "1/3", 2, "1", 6);
    CHECK(u["strictly_increasing"] == true);

    CHECK_THROWS_AS(report::radii_report("bogus", "2", "1/3", 2, "1", 3),
                    PreconditionError);
}

TEST_CASE("nctorus report") {
    json n = report::nctorus_report("1/3", "2,0;0,2");
    CHECK(n["all_identities"] == true);
    CHECK(n["scaling_phase"] == "1/3");
    CHECK_THROWS_AS(report::nctorus_report("1/2", "2,0;0,2"), PreconditionError);
}

TEST_CASE("uhf report") {
    json u = report::uhf_report(2, "1", {0, 1}, 40);
    CHECK(u["residues_equal"] == true);
    CHECK(u["levels"][0]["abscissa"] == "2");
    double closed = u["levels"][0]["zeta_closed_at_abscissa_plus_1"];
    double trunc = u["levels"][0]["zeta_truncated_at_abscissa_plus_1"];
    CHECK(closed == doctest::Approx(6.0).epsilon(1e-9));
    CHECK(trunc == doctest::Approx(closed).epsilon(1e-9));
}

TEST_CASE("appendix report") {
    json a = report::appendix_report(16, 25, 40, 0);
    CHECK(a["perturbation"]["ok"] == true);
    CHECK(a["residue_stability"]["difference_rel"] < 0.05);
    CHECK(a["residue_stability"]["same_res_bound_ok"] == true);
}
