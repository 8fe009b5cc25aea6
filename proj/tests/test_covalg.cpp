#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "solenoid/covalg.hpp"

#include <random>

using namespace solenoid;
using namespace solenoid::covalg;
using lattice::Phase;
using lattice::Tower;

namespace {

intlat::IntMatrix M(const std::string& s) { return intlat::parse_matrix(s); }
RatVec rv(std::initializer_list<Rat> xs) { return RatVec(xs); }

// random element of the level-n algebra with unit-phase rational coefficients
TrigPoly random_poly(const Tower& tw, int level, std::mt19937& rng, int nterms = 4) {
    auto pts = lattice::enumerate_ball(tw, level, Rat(2));
    std::uniform_int_distribution<size_t> pick(0, pts.size() - 1);
    std::uniform_int_distribution<int> num(0, 7), mag(1, 3);
    TrigPoly f(level, tw.p());
    for (int t = 0; t < nterms; ++t)
        f.add_term(pts[pick(rng)].xi,
                   Coeff::unit(Phase(Rat(num(rng)) / 8), Rat(mag(rng))));
    return f;
}

} // namespace

TEST_CASE("trig poly basics") {
    TrigPoly f = TrigPoly::monomial(1, rv({Rat(1) / 2}), Coeff(2));
    TrigPoly g = TrigPoly::monomial(1, rv({Rat(-1) / 2}), Coeff::i());
    TrigPoly prod = f * g;
    CHECK(prod.coefficient(rv({0})) == Coeff(2) * Coeff::i());
    CHECK(f.adjoint().coefficient(rv({Rat(-1) / 2})) == Coeff(2));
    CHECK(g.adjoint().coefficient(rv({Rat(1) / 2})) == -Coeff::i());
    CHECK((f - f).is_zero());
    CHECK(f.l2_norm_sq() == Coeff(4));
}

TEST_CASE("deck action on coefficients") {
    Tower tw(M("2"));
    // f = e^{pi i t} has frequency 1/2; translating by 1 flips the sign
    TrigPoly f = TrigPoly::monomial(1, rv({Rat(1) / 2}));
    TrigPoly moved = deck_action(f, rv({1}));
    CHECK(moved == f.scale(Coeff(-1)));
    CHECK(deck_action(f, rv({0})) == f);
}

TEST_CASE("deck action is a group action (exact phases)") {
    Tower tw(M("1,-1;1,1"));
    std::mt19937 rng(5);
    for (int it = 0; it < 20; ++it) {
        TrigPoly f = random_poly(tw, 1, rng);
        RatVec g1 = rv({Rat(1), Rat(0)}), g2 = rv({Rat(0), Rat(1)});
        CHECK(deck_action(deck_action(f, g1), g2) == deck_action(f, vec_add(g1, g2)));
    }
}

TEST_CASE("eigenspace projection") {
    Tower tw(M("2"));
    TrigPoly f = TrigPoly::monomial(1, rv({Rat(1) / 2}));
    SUBCASE("monomial classes") {
        CHECK(eigenspace_project(tw, 1, 1, f) == f);
        CHECK(eigenspace_project(tw, 1, 0, f).is_zero());
    }
    SUBCASE("E_0 is the identity on lower-level elements") {
        TrigPoly g = TrigPoly::monomial(1, rv({Rat(3)})) +
                     TrigPoly::monomial(1, rv({Rat(-1)}), Coeff::i());
        CHECK(eigenspace_project(tw, 1, 0, g) == g);
        CHECK(eigenspace_project(tw, 1, 1, g).is_zero());
    }
    SUBCASE("completeness and idempotence") {
        std::mt19937 rng(11);
        Tower tw2(M("2,1;0,2"));
        for (int it = 0; it < 10; ++it) {
            TrigPoly f2 = random_poly(tw2, 1, rng, 6);
            TrigPoly sum(1, 2);
            for (int k = 0; k < tw2.r(); ++k) {
                TrigPoly ek = eigenspace_project(tw2, 1, k, f2);
                CHECK(eigenspace_project(tw2, 1, k, ek) == ek);
                sum = sum + ek;
            }
            CHECK(sum == f2);
        }
    }
    SUBCASE("projection agrees with the averaging formula") {
        Tower tw2(M("3"));
        std::mt19937 rng(13);
        for (int it = 0; it < 10; ++it) {
            TrigPoly f2 = random_poly(tw2, 1, rng, 5);
            for (int k = 0; k < 3; ++k) {
                TrigPoly avg(1, 1);
                for (int g = 0; g < 3; ++g) {
                    Phase chi = lattice::pairing(tw2.group().dual_reps[k],
                                                 tw2.group().group_rep_rat(g));
                    avg = avg + deck_action_group(tw2, 1, g, f2)
                                    .scale(Coeff::unit(-chi, Rat(1) / 3));
                }
                CHECK(avg == eigenspace_project(tw2, 1, k, f2));
            }
        }
    }
    SUBCASE("grading: E_j(a) E_k(b) lands in class j+k") {
        Tower tw2(M("2,0;0,2"));
        std::mt19937 rng(17);
        TrigPoly a = random_poly(tw2, 1, rng, 5), b = random_poly(tw2, 1, rng, 5);
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                TrigPoly prod = eigenspace_project(tw2, 1, j, a) *
                                eigenspace_project(tw2, 1, k, b);
                int jk = tw2.group().dual_add(j, k);
                CHECK(eigenspace_project(tw2, 1, jk, prod) == prod);
            }
    }
}

TEST_CASE("sigma unitaries") {
    Tower tw(M("2"));
    SUBCASE("k = 0 gives the constant 1") {
        CHECK(sigma_unitary(tw, 1, 0) == TrigPoly::constant(1, 1, Coeff(1)));
    }
    SUBCASE("p=1 B=2: sigma(1/2-class) = e^{-pi i t}") {
        TrigPoly s = sigma_unitary(tw, 1, 1);
        CHECK(s.coefficient(rv({Rat(-1) / 2})) == Coeff(1));
        CHECK(s.size() == 1);
    }
    SUBCASE("sigma(j) sigma(k) sigma(j+k)^{-1} is the -omega(j,k) monomial") {
        Tower tw2(M("2,1;0,2"));
        auto c = lattice::cocycle_table(tw2, 1);
        const auto& G = tw2.group();
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                TrigPoly lhs = sigma_unitary(tw2, 1, j) * sigma_unitary(tw2, 1, k) *
                               sigma_unitary(tw2, 1, G.dual_add(j, k)).adjoint();
                CHECK(lhs == TrigPoly::monomial(1, vec_neg(c.table[j][k])));
                CHECK(tw2.in_lattice(0, c.table[j][k]));
            }
    }
}

TEST_CASE("matrix embedding") {
    SUBCASE("unit maps to the identity matrix") {
        Tower tw(M("2,0;0,2"));
        MatPoly m = matrix_embed(tw, 1, TrigPoly::constant(1, 2, Coeff(1)));
        CHECK(m == MatPoly::identity(4, 0, 2));
    }
    SUBCASE("p=1 B=2: off-diagonal entries of M(e^{pi i t})") {
        Tower tw(M("2"));
        TrigPoly b = TrigPoly::monomial(1, rv({Rat(1) / 2}));
        MatPoly m = matrix_embed(tw, 1, b);
        CHECK(m.entry(0, 0).is_zero());
        CHECK(m.entry(1, 1).is_zero());
        // sigma(0)^{-1} b sigma(1) = e^{pi i t} e^{-pi i t} = 1
        CHECK(m.entry(0, 1) == TrigPoly::constant(0, 1, Coeff(1)));
        // sigma(1)^{-1} b sigma(0) = e^{pi i t} e^{pi i t} = e^{2 pi i t}
        CHECK(m.entry(1, 0) == TrigPoly::monomial(0, rv({Rat(1)})));
    }
    SUBCASE("multiplicativity and star on random pairs") {
        std::mt19937 rng(23);
        for (const char* s : {"2", "2,0;0,2", "1,-1;1,1"}) {
            Tower tw(M(s));
            for (int it = 0; it < 12; ++it) {
                TrigPoly a = random_poly(tw, 1, rng), b = random_poly(tw, 1, rng);
                MatPoly ma = matrix_embed(tw, 1, a), mb = matrix_embed(tw, 1, b);
                CHECK(matrix_embed(tw, 1, a * b) == ma * mb);
                CHECK(matrix_embed(tw, 1, a.adjoint()) == ma.adjoint());
            }
        }
    }
    SUBCASE("level n-1 elements embed diagonally") {
        Tower tw(M("2,0;0,2"));
        TrigPoly f = TrigPoly::monomial(1, rv({Rat(1), Rat(0)})) +
                     TrigPoly::monomial(1, rv({Rat(0), Rat(-2)}), Coeff::i());
        MatPoly m = matrix_embed(tw, 1, f);
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                if (j == k) CHECK(m.entry(j, k) == f.at_level(0));
                else CHECK(m.entry(j, k).is_zero());
            }
    }
    SUBCASE("level-2 embedding stays in the level-1 lattice") {
        Tower tw(M("2"));
        TrigPoly b = TrigPoly::monomial(2, rv({Rat(3) / 4}));
        MatPoly m = matrix_embed(tw, 2, b);
        for (const auto& [hk, f] : m.entries) {
            (void)hk;
            for (const auto& [xi, c] : f.terms()) {
                (void)c;
                CHECK(tw.in_lattice(1, xi));
            }
        }
    }
}

TEST_CASE("l2 isometry") {
    Tower tw(M("2,0;0,2"));
    SUBCASE("constant goes to the 0-slot") {
        auto v = l2_isometry(tw, 1, TrigPoly::constant(1, 2, Coeff(3)));
        CHECK(v[0] == TrigPoly::constant(0, 2, Coeff(3)));
        for (int j = 1; j < 4; ++j) CHECK(v[j].is_zero());
    }
    SUBCASE("sigma(k) goes to the k-indicator") {
        for (int k = 0; k < 4; ++k) {
            auto v = l2_isometry(tw, 1, sigma_unitary(tw, 1, k));
            for (int j = 0; j < 4; ++j) {
                if (j == k) CHECK(v[j] == TrigPoly::constant(0, 2, Coeff(1)));
                else CHECK(v[j].is_zero());
            }
        }
    }
    SUBCASE("Parseval, exact") {
        std::mt19937 rng(29);
        for (int it = 0; it < 15; ++it) {
            TrigPoly b = random_poly(tw, 1, rng, 6);
            Coeff lhs = b.l2_norm_sq();
            Coeff rhs;
            for (const auto& aj : l2_isometry(tw, 1, b)) rhs += aj.l2_norm_sq();
            CHECK((lhs - rhs).is_zero());
            // and in floats, the promised 1e-12
            CHECK(std::abs(lhs.to_complex() - rhs.to_complex()) < 1e-12);
        }
    }
}

TEST_CASE("can map") {
    SUBCASE("zero targets give zero coefficients") {
        Tower tw(M("2"));
        std::vector<TrigPoly> zero(2, TrigPoly(1, 1));
        auto sol = can_solve(tw, 1, zero);
        CHECK(sol.verified);
        for (const auto& row : sol.a)
            for (const auto& a : row) CHECK(a.is_zero());
    }
    SUBCASE("character targets concentrate in one column") {
        Tower tw(M("2"));
        const auto& G = tw.group();
        // b(g) = <g, l0> * 1 for the nontrivial character l0
        std::vector<TrigPoly> targets;
        for (int g = 0; g < 2; ++g) {
            Phase chi = lattice::pairing(G.dual_reps[1], G.group_rep_rat(g));
            targets.push_back(TrigPoly::constant(1, 1, Coeff::unit(chi)));
        }
        auto sol = can_solve(tw, 1, targets);
        CHECK(sol.verified);
        int nonzero = 0;
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                if (!sol.a[j][k].is_zero()) ++nonzero;
        CHECK(nonzero == 1);
        CHECK_FALSE(sol.a[1][1].is_zero());  // sigma(1) a (x) sigma(1): classes 1,1
    }
    SUBCASE("random targets round-trip exactly") {
        std::mt19937 rng(31);
        for (const char* s : {"2", "2,0;0,2", "3"}) {
            Tower tw(M(s));
            for (int it = 0; it < 8; ++it) {
                std::vector<TrigPoly> targets;
                for (int g = 0; g < tw.r(); ++g) targets.push_back(random_poly(tw, 1, rng));
                auto sol = can_solve(tw, 1, targets);
                CHECK(sol.verified);
            }
        }
    }
}

TEST_CASE("regularity of finite-dimensional fixtures") {
    SUBCASE("q=3, Z_2, J = diag(1,-1,-1): odd part has no invertibles") {
        FinDimCovering cov;
        cov.q = 3;
        cov.cyclic_orders = {2};
        CoeffMatrix J(3);
        J.at(0, 0) = Coeff(1);
        J.at(1, 1) = Coeff(-1);
        J.at(2, 2) = Coeff(-1);
        cov.gens = {J};
        auto reps = regularity_check(cov);
        REQUIRE(reps.size() == 2);
        // trivial character: the fixed-point algebra contains the identity
        CHECK(reps[0].character == std::vector<int>{0});
        CHECK(reps[0].has_invertible);
        CHECK(reps[0].basis.size() == 5);
        // nontrivial character: basis {e12,e13,e21,e31}, det identically 0
        CHECK(reps[1].character == std::vector<int>{1});
        CHECK(reps[1].basis.size() == 4);
        CHECK_FALSE(reps[1].has_invertible);
    }
    SUBCASE("trivial group: the identity is a unitary in B_0") {
        FinDimCovering cov;
        cov.q = 2;
        auto reps = regularity_check(cov);
        REQUIRE(reps.size() == 1);
        CHECK(reps[0].has_invertible);
        CHECK(reps[0].basis.size() == 4);
        // polar unitary of the sample is unitary within float tolerance
        const auto& U = reps[0].polar_unitary;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                std::complex<double> dotc = 0;
                for (int k = 0; k < 2; ++k) dotc += std::conj(U[k][i]) * U[k][j];
                CHECK(std::abs(dotc - (i == j ? 1.0 : 0.0)) < 1e-9);
            }
    }
    SUBCASE("clock-and-shift fixture is regular (every class invertible)") {
        // conjugation by the q=2 clock and shift generates Z_2 x Z_2 grading
        FinDimCovering cov;
        cov.q = 2;
        cov.cyclic_orders = {2, 2};
        CoeffMatrix clock(2), shift(2);
        clock.at(0, 0) = Coeff(1);
        clock.at(1, 1) = Coeff(-1);
        shift.at(0, 1) = Coeff(1);
        shift.at(1, 0) = Coeff(1);
        cov.gens = {clock, shift};
        auto reps = regularity_check(cov);
        REQUIRE(reps.size() == 4);
        for (const auto& r : reps) {
            CHECK(r.basis.size() == 1);
            CHECK(r.has_invertible);
        }
    }
    SUBCASE("lattice covering: sigma(k) exists for every class") {
        Tower tw(M("2,1;0,2"));
        auto sig = regularity_lattice(tw, 1);
        CHECK(sig.size() == 4);
    }
}
