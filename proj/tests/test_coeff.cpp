#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "solenoid/coeff.hpp"

#include <random>

using namespace solenoid;
using namespace solenoid::coeff;

namespace {
Phase ph(int num, int den) { return Phase(Rat(num) / Rat(den)); }
} // namespace

TEST_CASE("unit phases and half-turn folding") {
    Coeff a = Coeff::unit(ph(1, 2));       // e^{i pi} = -1
    CHECK(a == Coeff(-1));
    CHECK((a * a) == Coeff(1));
    Coeff w = Coeff::unit(ph(3, 4));       // -i
    CHECK(w == -Coeff::i());
    CHECK(w.is_single_phase());
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic(1) == std::vector<Int>{-1, 1});
    CHECK(cyclotomic(2) == std::vector<Int>{1, 1});
    CHECK(cyclotomic(3) == std::vector<Int>{1, 1, 1});
    CHECK(cyclotomic(4) == std::vector<Int>{1, 0, 1});
    CHECK(cyclotomic(6) == std::vector<Int>{1, -1, 1});
    CHECK(cyclotomic(12) == std::vector<Int>{1, 0, -1, 0, 1});
}

TEST_CASE("cyclotomic cancellations are detected exactly") {
    // 1 + w + w^2 = 0 for w = e^{2 pi i/3}
    Coeff s = Coeff(1) + Coeff::unit(ph(1, 3)) + Coeff::unit(ph(2, 3));
    CHECK(s.is_zero());
    // sum of all 5th roots of unity
    Coeff f;
    for (int j = 0; j < 5; ++j) f += Coeff::unit(ph(j, 5));
    CHECK(f.is_zero());
    // 1 + w^2 + w^4 for w = e^{2 pi i/6}: also zero (it is the 3-cycle)
    Coeff g = Coeff(1) + Coeff::unit(ph(2, 6)) + Coeff::unit(ph(4, 6));
    CHECK(g.is_zero());
    // but 1 + w is not zero for w = e^{2 pi i/3}
    CHECK_FALSE((Coeff(1) + Coeff::unit(ph(1, 3))).is_zero());
}

TEST_CASE("ring arithmetic against float evaluation") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> num(-4, 4), den(1, 8), mag(-3, 3);
    auto random_coeff = [&]() {
        Coeff c;
        for (int t = 0; t < 3; ++t) {
            int d = den(rng);
            c += Coeff::unit(Phase(Rat(num(rng)) / Rat(d)), Rat(mag(rng)));
        }
        return c;
    };
    for (int it = 0; it < 200; ++it) {
        Coeff a = random_coeff(), b = random_coeff();
        auto za = a.to_complex(), zb = b.to_complex();
        CHECK(std::abs((a + b).to_complex() - (za + zb)) < 1e-9);
        CHECK(std::abs((a * b).to_complex() - (za * zb)) < 1e-9);
        CHECK(std::abs(a.conj().to_complex() - std::conj(za)) < 1e-9);
        CHECK(std::abs((-a).to_complex() + za) < 1e-9);
        // |a|^2 is real and matches
        Coeff n = a.abs_sq();
        CHECK(std::abs(n.to_complex().imag()) < 1e-9);
        CHECK(n.to_complex().real() == doctest::Approx(std::norm(za)).epsilon(1e-9));
        CHECK((n - n.conj()).is_zero());  // exact self-adjointness
    }
}

TEST_CASE("from_complex embeds doubles exactly") {
    Coeff c = Coeff::from_complex(0.375, -2.25);
    auto z = c.to_complex();
    CHECK(z.real() == 0.375);
    CHECK(z.imag() == -2.25);
    CHECK((c * Coeff::i()).to_complex() == std::complex<double>(2.25, 0.375));
}

TEST_CASE("as_rational on canonical values") {
    CHECK(Coeff(Rat(5) / 3).as_rational() == Rat(5) / 3);
    CHECK(Coeff().as_rational() == Rat(0));
    CHECK_FALSE(Coeff::i().as_rational().has_value());
}
