#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "solenoid/spectral.hpp"

using namespace solenoid;
using namespace solenoid::spectral;
using dirac::Cutoff;
using dirac::SpectrumMultiset;
using dirac::SpectralLine;
using lattice::Tower;

namespace {

intlat::IntMatrix M(const std::string& s) { return intlat::parse_matrix(s); }

SpectrumMultiset make_spec(std::initializer_list<std::pair<double, double>> lines) {
    SpectrumMultiset s;
    s.model = "synthetic";
    for (const auto& [v, w] : lines) {
        SpectralLine l;
        l.value = v;
        l.multiplicity = 1;
        l.weight = Rat(static_cast<long long>(w * 16)) / 16;  // dyadic weights
        s.lines.push_back(l);
    }
    return s;
}

} // namespace

TEST_CASE("counting function basics") {
    auto s = make_spec({{0, 1}, {1, 3}});
    CountingFunction N(s);
    CHECK(N.count_leq(0.5) == 1);
    CHECK(N.count_leq(1) == 4);
    CHECK(N.count_leq(-1) == 0);
    CHECK(N.total_weight() == 4);
    SUBCASE("empty spectrum") {
        SpectrumMultiset e;
        CountingFunction Ne(e);
        CHECK(Ne.count_leq(10) == 0);
        CHECK(Ne.total_weight() == 0);
    }
    SUBCASE("Lambda + lambda = total at non-atoms") {
        for (double t : {0.5, 0.7, 1.5, 2.0}) {
            CHECK(N.symmetric(t) + N.tail(t) == N.total_weight());
        }
    }
    SUBCASE("mu and tail are generalized inverses on step data") {
        // mu(t) steps down through the values as t passes the tail weights
        CHECK(N.mu(0) == 1);
        CHECK(N.mu(2.9) == 1);
        CHECK(N.mu(3) == 0);
        CHECK(N.mu(5) == 0);
        // tail(mu(t) + eps) <= t and mu(tail(s)) <= s at steps
        for (double t : {0.0, 0.5, 2.9, 3.0, 3.5}) {
            CHECK(N.tail(N.mu(t) + 1e-12) <= t + 1e-12);
        }
        for (double s : {0.25, 1.0, 2.0}) {
            CHECK(N.mu(N.tail(s)) <= s + 1e-12);
        }
    }
}

TEST_CASE("counting a torus spectrum against the circle law") {
    Tower tw(M("2,0;0,2"));
    auto spec = dirac::torus_spectrum(tw, 0, Cutoff::freq(Rat(16)));
    CountingFunction N(spec);
    double lam = 2 * M_PI * 16;
    CHECK(N.count_leq(lam) / (lam * lam) ==
          doctest::Approx(1.0 / (2 * M_PI)).epsilon(0.05));
}

TEST_CASE("zeta functions") {
    SUBCASE("single eigenvalue") {
        auto s = make_spec({{1, 1}});
        CHECK(zeta_truncated(s, 3.0, ZetaForm::AbsPower) == 1.0);
        CHECK(zeta_truncated(s, 7.7, ZetaForm::AbsPower) == 1.0);
    }
    SUBCASE("uhf geometric series at t = 3") {
        auto spec = dirac::uhf_spectrum({2, Rat(1), 0}, 60);
        double z = zeta_truncated(spec, 3.0, ZetaForm::AbsPower);
        CHECK(z == doctest::Approx(6.0).epsilon(1e-12));
        auto cf = uhf_closed_form(2, Rat(1), 0);
        CHECK(cf.zeta(3.0) == doctest::Approx(6.0).epsilon(1e-12));
    }
    SUBCASE("monotone in the cutoff for fixed s > 2") {
        Tower tw(M("2,0;0,2"));
        double prev = 0;
        for (int rad : {4, 8, 12}) {
            auto spec = dirac::torus_spectrum(tw, 0, Cutoff::freq(Rat(rad)));
            double z = zeta_truncated(spec, 2.5, ZetaForm::Resolvent);
            CHECK(z > prev);
            prev = z;
        }
    }
}

TEST_CASE("dimension and residue") {
    SUBCASE("self-calibration on a synthetic power law") {
        // N(v) = c v^d exactly at the steps v_j = (j/c)^{1/d}
        const double c = 2.7, d = 1.7;
        SpectrumMultiset s;
        s.model = "synthetic";
        for (int j = 1; j <= 4000; ++j) {
            SpectralLine l;
            l.value = std::pow(j / c, 1.0 / d);
            l.multiplicity = 1;
            l.weight = 1;
            s.lines.push_back(l);
        }
        auto fit = dimension_and_residue(s);
        CHECK(fit.d_hat == doctest::Approx(d).epsilon(0.02 / d));
        CHECK(fit.c_hat == doctest::Approx(c).epsilon(0.02));
    }
    SUBCASE("base torus: d = 2, residue 1/pi") {
        Tower tw(M("2,0;0,2"));
        auto spec = dirac::torus_spectrum(tw, 0, Cutoff::freq(Rat(50)));
        auto fit = dimension_and_residue(spec);
        CHECK(std::abs(fit.d_hat - 2.0) < 0.1);
        CHECK(std::abs(fit.residue - 1.0 / M_PI) / (1.0 / M_PI) < 0.05);
    }
    SUBCASE("insufficient window") {
        auto s = make_spec({{1, 1}, {2, 1}});
        CHECK_THROWS_AS(dimension_and_residue(s), PreconditionError);
    }
}

TEST_CASE("dixmier average") {
    SUBCASE("constant spectrum formula") {
        SpectrumMultiset s;
        SpectralLine l;
        l.value = 1;
        l.multiplicity = 64;
        l.weight = 1;
        s.lines.push_back(l);
        // integral = W * 2^{-d/2}, average = that / log W
        double avg = dixmier_average(s, 2.0);
        CHECK(avg == doctest::Approx(64.0 * 0.5 / std::log(64.0)).epsilon(1e-12));
    }
    SUBCASE("torus: the log-average trends to residue/d = 1/(2 pi)") {
        // the surrogate converges like 1/log t: at rho = 50 the zero-mode
        // offset still contributes ~2/log t, so only the trend is asserted
        Tower tw(M("2,0;0,2"));
        double prev = 1e9;
        for (int rho : {12, 25, 50}) {
            auto spec = dirac::torus_spectrum(tw, 0, Cutoff::freq(Rat(rho)));
            double avg = dixmier_average(spec, 2.0);
            CHECK(avg > 1.0 / (2 * M_PI));
            CHECK(avg < prev);
            prev = avg;
        }
        CHECK(prev == doctest::Approx(0.34867).epsilon(1e-3));
    }
    SUBCASE("uhf closed form: average near residue/d") {
        auto spec = dirac::uhf_spectrum({2, Rat(1), 0}, 24);
        double avg = dixmier_average(spec, 2.0);
        double want = uhf_closed_form(2, Rat(1), 0).residue / 2.0;
        CHECK(std::abs(avg - want) / want < 0.10);
    }
}

TEST_CASE("perturbation check") {
    SUBCASE("diagonal example counts") {
        // T = diag(1,2,3), C = diag(0.5,0,0): Lambda_{T+C}(1.2) = 0 <= Lambda_T(1.7) = 1
        auto sT = make_spec({{1, 1}, {2, 1}, {3, 1}});
        auto sP = make_spec({{1.5, 1}, {2, 1}, {3, 1}});
        CountingFunction NT(sT), NP(sP);
        CHECK(NP.symmetric(1.2) == 0);
        CHECK(NT.symmetric(1.7) == 1);
    }
    SUBCASE("100 random trials pass") {
        auto res = perturbation_check(24, 100, 100, 0);
        CHECK(res.trials == 100);
        CHECK(res.ok());
        CHECK(res.worst_gap >= 0);
    }
    SUBCASE("larger matrices") {
        auto res = perturbation_check(60, 50, 10, 7);
        CHECK(res.ok());
    }
}

TEST_CASE("residue stability") {
    SUBCASE("identical spectra give zero difference") {
        Tower tw(M("2,0;0,2"));
        auto spec = dirac::torus_spectrum(tw, 0, Cutoff::freq(Rat(20)));
        auto r = residue_stability_check(spec, spec, 2.0);
        CHECK(r.difference_rel == 0);
        CHECK(r.same_res_bound_ok);
    }
    SUBCASE("uhf: residues equal exactly across levels in closed form") {
        auto f0 = uhf_closed_form(2, Rat(1), 0);
        auto f3 = uhf_closed_form(2, Rat(1), 3);
        CHECK(f0.residue == f3.residue);
        CHECK(f0.abscissa == Rat(2));
        CHECK(f0.residue == doctest::Approx(3.0 / std::log(2.0)).epsilon(1e-12));
        auto g0 = uhf_closed_form(2, Rat(3) / 2, 2);
        CHECK(g0.abscissa == Rat(4) / 3);
        auto h0 = uhf_closed_form(3, Rat(2), 1);
        CHECK(h0.abscissa == Rat(1));
    }
    SUBCASE("torus base vs weighted cover within 5 percent") {
        Tower tw(M("2,0;0,2"));
        auto base = dirac::torus_spectrum(tw, 0, Cutoff::freq(Rat(50)));
        auto cover = dirac::torus_spectrum(tw, 2, Cutoff::freq(Rat(50)));
        auto r = residue_stability_check(base, cover, 2.0);
        CHECK(r.difference_rel < 0.05);
        CHECK(r.same_res_bound_ok);
    }
}
