#include "solenoid/lattice.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace solenoid::lattice {

int QuotientGroup::identity_dual() const {
    for (size_t i = 0; i < dual_reps.size(); ++i)
        if (vec_is_zero(dual_reps[i])) return static_cast<int>(i);
    throw InvariantViolation("quotient group without zero dual representative");
}

int QuotientGroup::identity_group() const {
    for (size_t i = 0; i < group_reps.size(); ++i) {
        bool zero = true;
        for (const auto& x : group_reps[i]) zero &= (x == 0);
        if (zero) return static_cast<int>(i);
    }
    throw InvariantViolation("quotient group without zero group representative");
}

int QuotientGroup::dual_index(const RatVec& rep) const {
    if (dual_lookup_.empty())
        for (size_t i = 0; i < dual_reps.size(); ++i)
            dual_lookup_[dual_reps[i]] = static_cast<int>(i);
    auto it = dual_lookup_.find(rep);
    if (it == dual_lookup_.end())
        throw PreconditionError("not a canonical dual representative: " + vec_to_string(rep));
    return it->second;
}

int QuotientGroup::dual_class_of(const RatVec& xi) const {
    RatVec f(xi.size());
    for (size_t i = 0; i < xi.size(); ++i) f[i] = rat_frac(xi[i]);
    return dual_index(f);
}

void QuotientGroup::build_tables() const {
    const int n = r();
    add_table_.assign(n, std::vector<int>(n));
    neg_table_.assign(n, 0);
    for (int j = 0; j < n; ++j) {
        neg_table_[j] = dual_class_of(vec_neg(dual_reps[j]));
        for (int k = 0; k < n; ++k)
            add_table_[j][k] = dual_class_of(vec_add(dual_reps[j], dual_reps[k]));
    }
}

int QuotientGroup::dual_add(int j, int k) const {
    if (add_table_.empty()) build_tables();
    return add_table_[j][k];
}

int QuotientGroup::dual_neg(int k) const {
    if (neg_table_.empty()) build_tables();
    return neg_table_[k];
}

RatVec QuotientGroup::group_rep_rat(int g) const {
    RatVec v(group_reps[g].size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = group_reps[g][i];
    return v;
}

QuotientGroup enumerate_quotient(const IntMatrix& B) {
    Int det = B.det();
    if (det == 0) throw PreconditionError("singular covering matrix");
    if (abs(det) == 1) throw PreconditionError("trivial covering");

    QuotientGroup G;
    G.B = B;
    G.A = intlat::inverse_transpose(B);
    G.order = abs(det);
    G.factors = intlat::smith_normal_form(B).invariant_factors();

    const int p = B.dim();
    IntMatrix Bt = B.transpose();

    // dual side: xi = A m in [0,1)^p; then m = B^T xi lies in a small box
    {
        std::vector<Int> lo(p, Int(0)), hi(p, Int(0));
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) {
                if (Bt.at(i, j) < 0) lo[i] += Bt.at(i, j);
                else hi[i] += Bt.at(i, j);
            }
        IntVec m(p);
        std::function<void(int)> rec = [&](int i) {
            if (i == p) {
                RatVec xi = G.A * RatVec(m.begin(), m.end());
                for (const auto& c : xi)
                    if (c < 0 || c >= 1) return;
                G.dual_reps.push_back(xi);
                return;
            }
            for (Int v = lo[i] - 1; v <= hi[i] + 1; ++v) { m[i] = v; rec(i + 1); }
        };
        rec(0);
    }

    // group side: z in Z^p with B^{-1} z in [0,1)^p
    {
        IntMatrix adj = B.adjugate();
        std::vector<Int> lo(p, Int(0)), hi(p, Int(0));
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) {
                if (B.at(i, j) < 0) lo[i] += B.at(i, j);
                else hi[i] += B.at(i, j);
            }
        IntVec z(p);
        std::function<void(int)> rec = [&](int i) {
            if (i == p) {
                // B^{-1} z = adj(B) z / det
                IntVec w = adj * z;
                for (const auto& c : w) {
                    Rat q = Rat(c) / Rat(det);
                    if (q < 0 || q >= 1) return;
                }
                G.group_reps.push_back(z);
                return;
            }
            for (Int v = lo[i] - 1; v <= hi[i] + 1; ++v) { z[i] = v; rec(i + 1); }
        };
        rec(0);
    }

    std::sort(G.dual_reps.begin(), G.dual_reps.end());
    std::sort(G.group_reps.begin(), G.group_reps.end());
    if (Int(G.dual_reps.size()) != G.order || Int(G.group_reps.size()) != G.order)
        throw InvariantViolation("quotient enumeration miscounted the deck group");
    return G;
}

SchurCheck schur_orthogonality_check(const QuotientGroup& G) {
    SchurCheck res;
    const int r = G.r();
    for (int g = 0; g < r; ++g) {
        RatVec gh = G.group_rep_rat(g);
        std::map<Rat, long long> phases;
        for (int k = 0; k < r; ++k)
            ++phases[pairing(G.dual_reps[k], gh).value()];

        bool is_identity = true;
        for (const auto& x : G.group_reps[g]) is_identity &= (x == 0);
        bool ok;
        if (is_identity) {
            ok = phases.size() == 1 && phases.count(Rat(0)) == 1;
        } else {
            // k -> <k,g> is a homomorphism onto the cyclic subgroup {j/d} of
            // Q/Z; the sum vanishes iff d > 1 and each value is hit equally
            Int d = 1;
            for (const auto& [ph, cnt] : phases) {
                (void)cnt;
                d = lcm(d, denominator(ph));
            }
            ok = d > 1 && Int(phases.size()) == d;
            if (ok) {
                long long expected = r / static_cast<long long>(d);
                for (Int j = 0; j < d && ok; ++j) {
                    Rat ph = Rat(j) / Rat(d);
                    ok = phases.count(ph) && phases[ph] == expected;
                }
            }
        }
        if (!ok) {
            res.ok = false;
            res.offending_group_index = g;
            return res;
        }
    }
    return res;
}

Tower::Tower(const IntMatrix& B) : G_(enumerate_quotient(B)) {
    a_pows_.push_back(RatMatrix::identity(B.dim()));
    bt_pows_.push_back(IntMatrix::identity(B.dim()));
}

const RatMatrix& Tower::A_pow(int n) const {
    while (static_cast<int>(a_pows_.size()) <= n)
        a_pows_.push_back(a_pows_.back() * G_.A);
    return a_pows_[n];
}

const IntMatrix& Tower::Bt_pow(int n) const {
    while (static_cast<int>(bt_pows_.size()) <= n)
        bt_pows_.push_back(bt_pows_.back() * G_.B.transpose());
    return bt_pows_[n];
}

RatVec Tower::section(int level, int k) const {
    if (level < 1) throw PreconditionError("section level must be >= 1");
    return A_pow(level - 1) * G_.dual_reps[k];
}

bool Tower::in_lattice(int level, const RatVec& xi) const {
    if (level == 0) {
        for (const auto& c : xi)
            if (!is_integer(c)) return false;
        return true;
    }
    const IntMatrix& Bt = Bt_pow(level);
    for (int i = 0; i < p(); ++i) {
        Rat acc = 0;
        for (int j = 0; j < p(); ++j)
            if (Bt.at(i, j) != 0) acc += Rat(Bt.at(i, j)) * xi[j];
        if (!is_integer(acc)) return false;
    }
    return true;
}

int Tower::top_class(int level, const RatVec& xi) const {
    RatVec w = RatMatrix::from_int(Bt_pow(level - 1)) * xi;
    return G_.dual_class_of(w);
}

Cocycle cocycle_table(const Tower& tw, int level) {
    if (level < 1) throw PreconditionError("cocycle level must be >= 1");
    const int r = tw.r();
    Cocycle c;
    c.level = level;
    c.table.assign(r, std::vector<RatVec>(r));
    for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k) {
            int jk = tw.group().dual_add(j, k);
            RatVec w = vec_sub(vec_add(tw.section(level, j), tw.section(level, k)),
                               tw.section(level, jk));
            if (!tw.in_lattice(level - 1, w))
                throw InvariantViolation("cocycle value outside the lower lattice");
            c.table[j][k] = w;
        }
    return c;
}

RatVec mode_bijection_fwd(const Tower& tw, int level, const IntVec& m,
                          const std::vector<int>& classes) {
    if (static_cast<int>(classes.size()) != level)
        throw PreconditionError("mode tuple length must equal the level");
    RatVec xi(m.begin(), m.end());
    for (int h = 1; h <= level; ++h)
        xi = vec_add(xi, tw.section(h, classes[h - 1]));
    return xi;
}

ModeDecomposition mode_bijection_inv(const Tower& tw, int level, RatVec xi) {
    if (!tw.in_lattice(level, xi))
        throw PreconditionError("not a level-" + std::to_string(level) + " frequency");
    ModeDecomposition d;
    d.classes.assign(level, 0);
    for (int h = level; h >= 1; --h) {
        int k = tw.top_class(h, xi);
        d.classes[h - 1] = k;
        xi = vec_sub(xi, tw.section(h, k));
        if (!tw.in_lattice(h - 1, xi))
            throw InvariantViolation("mode peeling left the lattice tower");
    }
    d.m.resize(xi.size());
    for (size_t i = 0; i < xi.size(); ++i) {
        if (!is_integer(xi[i]))
            throw InvariantViolation("mode peeling did not reach Z^p");
        d.m[i] = numerator(xi[i]);
    }
    return d;
}

std::vector<LatticePoint> enumerate_ball(const Tower& tw, int level, const Rat& R) {
    if (R < 0) throw PreconditionError("ball radius must be >= 0");
    const int p = tw.p();
    const IntMatrix& Btn = tw.Bt_pow(level);
    const RatMatrix& An = tw.A_pow(level);
    const Rat R2 = R * R;

    std::vector<Int> bound(p, Int(0));
    for (int i = 0; i < p; ++i) {
        Int rowsum = 0;
        for (int j = 0; j < p; ++j) rowsum += abs(Btn.at(i, j));
        bound[i] = rat_ceil(Rat(rowsum) * R);
    }

    std::vector<LatticePoint> out;
    IntVec m(p);
    std::function<void(int)> rec = [&](int i) {
        if (i == p) {
            RatVec xi = An * RatVec(m.begin(), m.end());
            Rat n2 = norm_sq(xi);
            if (n2 <= R2) out.push_back({m, xi, n2});
            return;
        }
        for (Int v = -bound[i]; v <= bound[i]; ++v) { m[i] = v; rec(i + 1); }
    };
    rec(0);
    return out;  // lexicographic in m by construction
}

} // namespace solenoid::lattice
