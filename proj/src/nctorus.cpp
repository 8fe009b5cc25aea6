#include "solenoid/nctorus.hpp"

namespace solenoid::nctorus {

RationalAngle::RationalAngle(const Rat& theta) {
    Rat t = rat_frac(theta);
    num = numerator(t);
    den = denominator(t);
    if (den > 64) throw PreconditionError("rational angle denominator too large");
}

RationalAngle parse_angle(const std::string& text) {
    return RationalAngle(rat_from_string(text));
}

ClockShift clock_shift(const RationalAngle& theta) {
    const int q = theta.q();
    ClockShift cs{CoeffMatrix(q), CoeffMatrix(q)};
    for (int k = 0; k < q; ++k)
        cs.U0.at(k, k) = Coeff::unit(Phase(Rat(k) * theta.value()));
    for (int k = 0; k < q; ++k)
        cs.V0.at((k + 1) % q, k) = Coeff(1);
    return cs;
}

CoeffMatrix weyl_matrix(const ClockShift& cs, const IntVec& n) {
    const int q = cs.U0.dim();
    auto pw = [&](const CoeffMatrix& m, const Int& e) {
        CoeffMatrix r = CoeffMatrix::identity(q);
        CoeffMatrix base = e >= 0 ? m : m.adjoint();
        for (Int i = 0; i < abs(e); ++i) r = r * base;
        return r;
    };
    return pw(cs.U0, n[0]) * pw(cs.V0, n[1]);
}

WeylPower weyl_power(const RationalAngle& theta, const IntVec& n, long k) {
    WeylPower w;
    Int kk = k;
    // k(k-1) is even, so this is an exact element of Q/Z
    Rat val = -theta.value() * Rat(kk * (kk - 1) * n[0] * n[1]) / 2;
    w.phase = Phase(val);
    w.exponent = {n[0] * kk, n[1] * kk};
    return w;
}

NCPoly NCPoly::monomial(int level, const Rat& theta, const RatVec& xi,
                        const CoeffMatrix& m) {
    NCPoly f(level, m.dim(), theta);
    f.add_term(xi, m);
    return f;
}

void NCPoly::add_term(const RatVec& xi, const CoeffMatrix& m) {
    auto it = terms_.find(xi);
    if (it == terms_.end()) {
        if (!m.is_zero()) terms_.emplace(xi, m);
        return;
    }
    it->second = it->second + m;
    if (it->second.is_zero()) terms_.erase(it);
}

NCPoly NCPoly::operator+(const NCPoly& o) const {
    NCPoly r = *this;
    r.level_ = std::max(level_, o.level_);
    if (q_ == 0) { r.q_ = o.q_; r.theta_ = o.theta_; }
    for (const auto& [xi, m] : o.terms_) r.add_term(xi, m);
    return r;
}

NCPoly NCPoly::operator-(const NCPoly& o) const {
    NCPoly r = *this;
    r.level_ = std::max(level_, o.level_);
    if (q_ == 0) { r.q_ = o.q_; r.theta_ = o.theta_; }
    for (const auto& [xi, m] : o.terms_) r.add_term(xi, m.scale(Coeff(-1)));
    return r;
}

NCPoly NCPoly::operator*(const NCPoly& o) const {
    NCPoly r(std::max(level_, o.level_), q_ ? q_ : o.q_, q_ ? theta_ : o.theta_);
    for (const auto& [xi, m] : terms_)
        for (const auto& [eta, n] : o.terms_) r.add_term(vec_add(xi, eta), m * n);
    return r;
}

NCPoly NCPoly::scale(const Coeff& c) const {
    NCPoly r(level_, q_, theta_);
    for (const auto& [xi, m] : terms_) r.add_term(xi, m.scale(c));
    return r;
}

NCPoly NCPoly::adjoint() const {
    NCPoly r(level_, q_, theta_);
    for (const auto& [xi, m] : terms_) r.add_term(vec_neg(xi), m.adjoint());
    return r;
}

NCPoly NCPoly::pow(long k) const {
    NCPoly base = *this;
    if (k < 0) {
        if (terms_.size() != 1)
            throw PreconditionError("negative powers only for unitary monomials");
        base = adjoint();
        k = -k;
    }
    NCPoly r = monomial(level_, theta_, RatVec(2, Rat(0)), CoeffMatrix::identity(q_));
    for (long i = 0; i < k; ++i) r = r * base;
    return r;
}

bool NCPoly::is_zero() const {
    for (const auto& [xi, m] : terms_)
        if (!m.is_zero()) return false;
    return true;
}

NCPoly NCPoly::at_level(int level) const {
    NCPoly r = *this;
    r.level_ = level;
    return r;
}

Coeff NCPoly::trace() const {
    auto it = terms_.find(RatVec(2, Rat(0)));
    if (it == terms_.end()) return Coeff();
    Coeff tr;
    for (int i = 0; i < q_; ++i) tr += it->second.at(i, i);
    return tr * Coeff(Rat(1) / Rat(q_));
}

NCPoly deck_action(const ClockShift& cs, const NCPoly& f, const RatVec& n) {
    // J n = (n_2, -n_1)
    RatVec jn{n[1], -n[0]};
    if (!is_integer(jn[0]) || !is_integer(jn[1]))
        throw PreconditionError("deck translations must be integer vectors");
    CoeffMatrix w = weyl_matrix(cs, {numerator(jn[0]), numerator(jn[1])});
    CoeffMatrix w_inv = w.adjoint();
    NCPoly r(f.level(), f.q(), f.theta());
    for (const auto& [xi, m] : f.terms()) {
        Coeff ph = Coeff::unit(Phase(-f.theta() * dot(xi, n)));
        r.add_term(xi, (w * m * w_inv).scale(ph));
    }
    return r;
}

NCPoly expectation_onto_base(const Tower& tw, const ClockShift& cs, const NCPoly& f) {
    const int r = tw.r();
    NCPoly acc(f.level(), f.q(), f.theta());
    for (int g = 0; g < r; ++g) {
        RatVec gh = tw.group().group_rep_rat(g);
        acc = acc + deck_action(cs, f, gh);
    }
    return acc.scale(Coeff(Rat(1) / Rat(r)));
}

NCPoly base_generator_u(const RationalAngle& theta) {
    ClockShift cs = clock_shift(theta);
    return NCPoly::monomial(0, theta.value(), {Rat(1), Rat(0)}, cs.U0);
}

NCPoly base_generator_v(const RationalAngle& theta) {
    ClockShift cs = clock_shift(theta);
    return NCPoly::monomial(0, theta.value(), {Rat(0), Rat(1)}, cs.V0);
}

CoveringGenerators covering_generators(const intlat::IntMatrix& B,
                                       const RationalAngle& theta) {
    if (B.dim() != 2) throw PreconditionError("rotation-algebra coverings need 2x2 B");
    Int det = B.det();
    if (abs(det) <= 1) throw PreconditionError("trivial covering");
    Int q = theta.den;
    if (((det - 1) % q) != 0)
        throw PreconditionError("not a self-covering: det B != 1 mod q");

    ClockShift cs = clock_shift(theta);
    intlat::RatMatrix A = intlat::inverse_transpose(B);
    const Int a = B.at(0, 0), b = B.at(0, 1), c = B.at(1, 0), d = B.at(1, 1);

    // cofactor matrix columns give the Weyl exponents
    IntVec cb_e1{d, -b}, cb_e2{-c, a};
    RatVec freq_u{A.at(0, 0), A.at(1, 0)};  // A e_1
    RatVec freq_v{A.at(0, 1), A.at(1, 1)};  // A e_2

    Coeff pref_u = Coeff::unit(Phase(theta.value() * Rat(b * d * (1 - a + c)) / 2));
    Coeff pref_v = Coeff::unit(Phase(theta.value() * Rat(a * c * (1 + b - d)) / 2));

    CoveringGenerators gen{
        NCPoly::monomial(1, theta.value(), freq_u, weyl_matrix(cs, cb_e1).scale(pref_u)),
        NCPoly::monomial(1, theta.value(), freq_v, weyl_matrix(cs, cb_e2).scale(pref_v))};
    return gen;
}

Phase commutation_phase(const NCPoly& x, const NCPoly& y) {
    if (x.terms().size() != 1 || y.terms().size() != 1)
        throw PreconditionError("commutation phase needs single-frequency monomials");
    NCPoly xy = x * y;
    NCPoly yx = y * x;
    // xy = e^{2 pi i c} yx: compare the unique coefficient matrices entrywise
    const auto& [xi, mxy] = *xy.terms().begin();
    const auto& myx = yx.terms().begin()->second;
    (void)xi;
    for (int i = 0; i < mxy.dim(); ++i)
        for (int j = 0; j < mxy.dim(); ++j) {
            if (myx.at(i, j).is_zero()) continue;
            if (!myx.at(i, j).is_single_phase() || !mxy.at(i, j).is_single_phase())
                throw PreconditionError("not monomial matrices");
            const auto& t0 = myx.at(i, j).terms()[0];
            const auto& t1 = mxy.at(i, j).terms()[0];
            if (t1.mag != t0.mag && t1.mag != -t0.mag)
                throw InvariantViolation("commutator is not a phase");
            Phase diff = t1.phase - t0.phase;
            if (t1.mag == -t0.mag) diff = diff + Phase(Rat(1) / 2);
            return diff;
        }
    throw PreconditionError("zero monomial in commutation phase");
}

IdentityReport fixed_point_identities(const intlat::IntMatrix& B,
                                      const RationalAngle& theta) {
    IdentityReport rep;
    ClockShift cs = clock_shift(theta);
    const int q = theta.q();

    // clock-shift commutation, exactly
    {
        CoeffMatrix lhs = cs.U0 * cs.V0;
        CoeffMatrix rhs = (cs.V0 * cs.U0).scale(Coeff::unit(Phase(theta.value())));
        rep.clock_commutation = (lhs - rhs).is_zero();
        if (!rep.clock_commutation) rep.first_mismatch = "U0 V0 != e(theta) V0 U0";
        // U0^q = V0^q = I
        CoeffMatrix uq = CoeffMatrix::identity(q), vq = CoeffMatrix::identity(q);
        for (int i = 0; i < q; ++i) { uq = uq * cs.U0; vq = vq * cs.V0; }
        rep.clock_commutation = rep.clock_commutation &&
                                (uq - CoeffMatrix::identity(q)).is_zero() &&
                                (vq - CoeffMatrix::identity(q)).is_zero();
    }

    // Weyl phase law against explicit matrix powers, |k| <= 4
    {
        rep.weyl_power_law = true;
        for (int n1 = -2; n1 <= 2 && rep.weyl_power_law; ++n1)
            for (int n2 = -2; n2 <= 2 && rep.weyl_power_law; ++n2)
                for (long k = -4; k <= 4 && rep.weyl_power_law; ++k) {
                    IntVec n{n1, n2};
                    CoeffMatrix wn = weyl_matrix(cs, n);
                    CoeffMatrix pw = CoeffMatrix::identity(q);
                    CoeffMatrix base = k >= 0 ? wn : wn.adjoint();
                    for (long i = 0; i < std::abs(k); ++i) pw = pw * base;
                    WeylPower law = weyl_power(theta, n, k);
                    CoeffMatrix rhs =
                        weyl_matrix(cs, law.exponent).scale(Coeff::unit(law.phase));
                    if (!(pw - rhs).is_zero()) {
                        rep.weyl_power_law = false;
                        rep.first_mismatch = "W(n)^k law at n=(" +
                                             n[0].str() + "," + n[1].str() +
                                             "), k=" + std::to_string(k);
                    }
                }
    }

    auto gen = covering_generators(B, theta);
    const Int a = B.at(0, 0), b = B.at(0, 1), c = B.at(1, 0), d = B.at(1, 1);

    auto lpow = [](const NCPoly& x, const Int& e) { return x.pow(static_cast<long>(e)); };

    // fixed-point identities: U_B^a V_B^b = U and U_B^c V_B^d = V
    {
        NCPoly u = base_generator_u(theta).at_level(1);
        NCPoly v = base_generator_v(theta).at_level(1);
        NCPoly lhs_u = lpow(gen.U, a) * lpow(gen.V, b);
        NCPoly lhs_v = lpow(gen.U, c) * lpow(gen.V, d);
        rep.u_fixed_point = lhs_u == u;
        rep.v_fixed_point = lhs_v == v;
        if (!rep.u_fixed_point && rep.first_mismatch.empty()) {
            const auto& t = lhs_u.terms().begin();
            rep.first_mismatch = "U_B^a V_B^b differs at frequency " +
                                 vec_to_string(t->first);
        }
        if (!rep.v_fixed_point && rep.first_mismatch.empty())
            rep.first_mismatch = "U_B^c V_B^d != V";
    }

    // theta-scaling: U_B V_B = e^{2 pi i det B theta} V_B U_B
    {
        Phase got = commutation_phase(gen.U, gen.V);
        rep.theta_scaling = got == Phase(Rat(B.det()) * theta.value());
        if (!rep.theta_scaling && rep.first_mismatch.empty())
            rep.first_mismatch = "covering commutator phase is " +
                                 rat_to_string(got.value());
    }

    // the same law computed in the base algebra from W(m) W(n) phases
    {
        NCPoly u = base_generator_u(theta);
        NCPoly v = base_generator_v(theta);
        NCPoly u1 = lpow(u, a) * lpow(v, b);
        NCPoly v1 = lpow(u, c) * lpow(v, d);
        Phase got = commutation_phase(u1, v1);
        rep.base_scaling = got == Phase(Rat(B.det()) * theta.value());
        if (!rep.base_scaling && rep.first_mismatch.empty())
            rep.first_mismatch = "base commutator phase is " + rat_to_string(got.value());
    }

    // deck invariance of the covering generators under B Z^2 translations
    {
        rep.deck_invariance = true;
        for (int m1 = -1; m1 <= 1 && rep.deck_invariance; ++m1)
            for (int m2 = -1; m2 <= 1 && rep.deck_invariance; ++m2) {
                RatVec bm{Rat(a * m1 + b * m2), Rat(c * m1 + d * m2)};
                if (!(deck_action(cs, gen.U, bm) == gen.U) ||
                    !(deck_action(cs, gen.V, bm) == gen.V)) {
                    rep.deck_invariance = false;
                    rep.first_mismatch = "covering generator not B Z^2 invariant";
                }
            }
    }
    return rep;
}

NCPoly level_image(const RationalAngle& theta, int n, const IntVec& m) {
    ClockShift cs = clock_shift(theta);
    Int scale = Int(1) << n;
    RatVec freq{Rat(m[0]) / Rat(scale), Rat(m[1]) / Rat(scale)};
    IntVec wexp{m[0] * scale, m[1] * scale};
    return NCPoly::monomial(n, theta.value(), freq, weyl_matrix(cs, wexp));
}

} // namespace solenoid::nctorus
