#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "solenoid/lattice.hpp"

#include <random>
#include <set>

using namespace solenoid;
using namespace solenoid::lattice;

namespace {
intlat::IntMatrix M(const std::string& s) { return intlat::parse_matrix(s); }
RatVec rv(std::initializer_list<Rat> xs) { return RatVec(xs); }
} // namespace

TEST_CASE("phase arithmetic is exact mod 1") {
    Phase a(Rat(3) / Rat(4)), b(Rat(1) / Rat(2));
    CHECK((a + b).value() == Rat(1) / Rat(4));
    CHECK((a - b).value() == Rat(1) / Rat(4));
    CHECK((-a).value() == Rat(1) / Rat(4));
    CHECK(Phase(Rat(-7) / Rat(3)).value() == Rat(2) / Rat(3));
    CHECK(Phase(Rat(5)).is_zero());
}

TEST_CASE("pairing examples") {
    CHECK(pairing(rv({Rat(1) / 2}), rv({Rat(1)})).value() == Rat(1) / 2);
    CHECK(pairing(rv({Rat(1) / 3}), rv({Rat(2)})).value() == Rat(2) / 3);
    CHECK(pairing(rv({Rat(1) / 2, Rat(1) / 2}), rv({Rat(1), Rat(1)})).is_zero());
}

TEST_CASE("enumerate quotient: fixed examples") {
    SUBCASE("B = 2I") {
        auto G = enumerate_quotient(M("2,0;0,2"));
        CHECK(G.order == 4);
        CHECK(G.factors == std::vector<Int>{2, 2});
        REQUIRE(G.dual_reps.size() == 4);
        CHECK(G.dual_reps[0] == rv({0, 0}));
        CHECK(G.dual_reps[1] == rv({0, Rat(1) / 2}));
        CHECK(G.dual_reps[2] == rv({Rat(1) / 2, 0}));
        CHECK(G.dual_reps[3] == rv({Rat(1) / 2, Rat(1) / 2}));
    }
    SUBCASE("p = 1, B = 3") {
        auto G = enumerate_quotient(M("3"));
        CHECK(G.order == 3);
        CHECK(G.dual_reps[0] == rv({0}));
        CHECK(G.dual_reps[1] == rv({Rat(1) / 3}));
        CHECK(G.dual_reps[2] == rv({Rat(2) / 3}));
    }
    SUBCASE("rotation-like order 2") {
        auto G = enumerate_quotient(M("1,-1;1,1"));
        CHECK(G.order == 2);
        REQUIRE(G.dual_reps.size() == 2);
        CHECK(G.dual_reps[0] == rv({0, 0}));
        CHECK(G.dual_reps[1] == rv({Rat(1) / 2, Rat(1) / 2}));
    }
    SUBCASE("trivial covering rejected") {
        CHECK_THROWS_AS(enumerate_quotient(M("1,0;0,1")), PreconditionError);
        CHECK_THROWS_AS(enumerate_quotient(M("0,1;1,0")), PreconditionError);
    }
}

TEST_CASE("dual reps by exhaustion oracle") {
    // independent oracle: scan a box of integer m, keep A m inside [0,1)^2
    auto G = enumerate_quotient(M("1,-1;1,1"));
    std::set<RatVec> found;
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b) {
            RatVec xi = G.A * rv({a, b});
            if (xi[0] >= 0 && xi[0] < 1 && xi[1] >= 0 && xi[1] < 1)
                found.insert(xi);
        }
    CHECK(found == std::set<RatVec>(G.dual_reps.begin(), G.dual_reps.end()));
}

TEST_CASE("schur orthogonality: fixed and corpus") {
    SUBCASE("2I explicit phases") {
        auto G = enumerate_quotient(M("2,0;0,2"));
        CHECK(schur_orthogonality_check(G).ok);
        int g10 = -1;
        for (size_t i = 0; i < G.group_reps.size(); ++i)
            if (G.group_reps[i] == IntVec{1, 0}) g10 = static_cast<int>(i);
        REQUIRE(g10 >= 0);
        std::multiset<Rat> ph;
        for (int k = 0; k < 4; ++k)
            ph.insert(pairing(G.dual_reps[k], G.group_rep_rat(g10)).value());
        CHECK(ph == std::multiset<Rat>{0, 0, Rat(1) / 2, Rat(1) / 2});
    }
    SUBCASE("p=1 B=3 full cyclic group") {
        auto G = enumerate_quotient(M("3"));
        CHECK(schur_orthogonality_check(G).ok);
    }
    SUBCASE("random corpus p <= 3, |det| <= 12") {
        std::mt19937 rng(7);
        std::uniform_int_distribution<int> ent(-3, 3), dims(1, 3);
        int done = 0;
        while (done < 40) {
            int p = dims(rng);
            intlat::IntMatrix B(p);
            for (int i = 0; i < p; ++i)
                for (int j = 0; j < p; ++j) B.at(i, j) = ent(rng);
            Int d = abs(B.det());
            if (d < 2 || d > 12) continue;
            ++done;
            auto G = enumerate_quotient(B);
            INFO("B = ", B.to_string());
            CHECK(schur_orthogonality_check(G).ok);
            CHECK(Int(G.dual_reps.size()) == d);
            CHECK(Int(G.group_reps.size()) == d);
        }
    }
}

TEST_CASE("canonical sections") {
    SUBCASE("B = 2I level 2: quarter lattice") {
        Tower tw(M("2,0;0,2"));
        std::set<RatVec> vals;
        for (int k = 0; k < 4; ++k) vals.insert(tw.section(2, k));
        std::set<RatVec> expect{rv({0, 0}), rv({0, Rat(1) / 4}),
                                rv({Rat(1) / 4, 0}), rv({Rat(1) / 4, Rat(1) / 4})};
        CHECK(vals == expect);
    }
    SUBCASE("p=1 B=2 levels 1 and 3") {
        Tower tw(M("2"));
        CHECK(tw.section(1, 1) == rv({Rat(1) / 2}));
        CHECK(tw.section(3, 1) == rv({Rat(1) / 8}));
        CHECK(tw.section(3, 0) == rv({0}));
    }
}

TEST_CASE("cocycle tables") {
    SUBCASE("p=1 B=2: omega(1/2,1/2) = 1") {
        Tower tw(M("2"));
        auto c = cocycle_table(tw, 1);
        CHECK(c.table[1][1] == rv({1}));
        CHECK(c.table[0][1] == rv({0}));
        CHECK(c.table[1][0] == rv({0}));
    }
    SUBCASE("rotation-like diagonal value") {
        Tower tw(M("1,-1;1,1"));
        auto c = cocycle_table(tw, 1);
        CHECK(c.table[1][1] == rv({1, 1}));
    }
    SUBCASE("cocycle identity on a level-2 table") {
        Tower tw(M("2,1;0,2"));
        auto c = cocycle_table(tw, 2);
        const auto& G = tw.group();
        for (int j = 0; j < tw.r(); ++j)
            for (int k = 0; k < tw.r(); ++k)
                for (int l = 0; l < tw.r(); ++l) {
                    RatVec lhs = vec_add(c.table[j][k], c.table[G.dual_add(j, k)][l]);
                    RatVec rhs = vec_add(c.table[k][l], c.table[j][G.dual_add(k, l)]);
                    CHECK(lhs == rhs);
                }
    }
}

TEST_CASE("mode bijection") {
    SUBCASE("p=1 B=2 n=1: 3/2 = 1 + 1/2") {
        Tower tw(M("2"));
        auto d = mode_bijection_inv(tw, 1, rv({Rat(3) / 2}));
        CHECK(d.m == IntVec{1});
        CHECK(tw.group().dual_reps[d.classes[0]] == rv({Rat(1) / 2}));
    }
    SUBCASE("zero maps to zero") {
        Tower tw(M("2,0;0,2"));
        auto d = mode_bijection_inv(tw, 3, rv({0, 0}));
        CHECK(d.m == IntVec{0, 0});
        for (int k : d.classes) CHECK(vec_is_zero(tw.group().dual_reps[k]));
    }
    SUBCASE("p=1 B=2 n=2: 7/4 peels to 1 + 1/2 + 1/4") {
        Tower tw(M("2"));
        auto d = mode_bijection_inv(tw, 2, rv({Rat(7) / 4}));
        CHECK(d.m == IntVec{1});
        CHECK(tw.section(1, d.classes[0]) == rv({Rat(1) / 2}));
        CHECK(tw.section(2, d.classes[1]) == rv({Rat(1) / 4}));
        CHECK(mode_bijection_fwd(tw, 2, d.m, d.classes) == rv({Rat(7) / 4}));
    }
    SUBCASE("not a frequency") {
        Tower tw(M("2"));
        CHECK_THROWS_AS(mode_bijection_inv(tw, 1, rv({Rat(1) / 3})), PreconditionError);
    }
    SUBCASE("round trip over whole balls") {
        for (const char* s : {"2,0;0,2", "1,-1;1,1", "2,1;0,2"}) {
            Tower tw(M(s));
            for (int n = 1; n <= 3; ++n) {
                auto pts = enumerate_ball(tw, n, Rat(3));
                for (const auto& pt : pts) {
                    auto d = mode_bijection_inv(tw, n, pt.xi);
                    CHECK(mode_bijection_fwd(tw, n, d.m, d.classes) == pt.xi);
                }
            }
        }
    }
    SUBCASE("tuple uniqueness: fwd is injective on a finite window") {
        Tower tw(M("2"));
        std::set<RatVec> seen;
        for (int m = -2; m <= 2; ++m)
            for (int k1 = 0; k1 < 2; ++k1)
                for (int k2 = 0; k2 < 2; ++k2) {
                    auto xi = mode_bijection_fwd(tw, 2, {m}, {k1, k2});
                    CHECK(seen.insert(xi).second);
                }
    }
}

TEST_CASE("ball enumeration") {
    SUBCASE("Z^2 radius 1 and sqrt 2") {
        Tower tw(M("2,0;0,2"));
        CHECK(enumerate_ball(tw, 0, Rat(1)).size() == 5);
        // norms in Z^2 are integers, so radius 3/2 captures norm^2 <= 2
        CHECK(enumerate_ball(tw, 0, Rat(3) / 2).size() == 9);
    }
    SUBCASE("half-integer lattice in unit ball: 13 points") {
        Tower tw(M("2,0;0,2"));
        CHECK(enumerate_ball(tw, 1, Rat(1)).size() == 13);
    }
    SUBCASE("duplicate-free and sorted") {
        Tower tw(M("2,1;0,2"));
        auto pts = enumerate_ball(tw, 2, Rat(2));
        std::set<IntVec> coords;
        for (const auto& pt : pts) CHECK(coords.insert(pt.m).second);
        CHECK(std::is_sorted(pts.begin(), pts.end(),
                             [](const LatticePoint& a, const LatticePoint& b) {
                                 return a.m < b.m;
                             }));
    }
    SUBCASE("lattice nesting: level n-1 points are level n points") {
        Tower tw(M("1,-1;1,1"));
        for (int n = 1; n <= 3; ++n) {
            auto pts = enumerate_ball(tw, n - 1, Rat(2));
            for (const auto& pt : pts) CHECK(tw.in_lattice(n, pt.xi));
        }
    }
    SUBCASE("counting density approaches r^n") {
        Tower tw(M("2,0;0,2"));
        double R = 50;
        auto pts = enumerate_ball(tw, 1, Rat(50));
        double expect = 4.0 * M_PI * R * R;
        CHECK(std::abs(static_cast<double>(pts.size()) - expect) / expect < 0.05);
    }
}
