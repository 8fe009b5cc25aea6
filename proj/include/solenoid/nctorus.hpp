#pragma once

#include "solenoid/covalg.hpp"

namespace solenoid::nctorus {

using covalg::Coeff;
using covalg::CoeffMatrix;
using lattice::Phase;
using lattice::Tower;

// theta = p/q in lowest terms, 0 <= p < q
struct RationalAngle {
    Int num;
    Int den;
    RationalAngle(const Rat& theta);  // NOLINT: canonicalizes
    Rat value() const { return Rat(num) / Rat(den); }
    int q() const { return static_cast<int>(den); }
};

RationalAngle parse_angle(const std::string& text);  // "p/q"

// (U0)_{hk} = delta_{h,k} e^{2 pi i (k-1) theta}; V0 the cyclic shift with
// U0 V0 = e^{2 pi i theta} V0 U0. The printed index convention for V0 is
// transposed so that this commutation relation holds exactly.
struct ClockShift {
    CoeffMatrix U0, V0;
};
ClockShift clock_shift(const RationalAngle& theta);

// W0(n) = U0^{n1} V0^{n2}; negative powers via the adjoint
CoeffMatrix weyl_matrix(const ClockShift& cs, const IntVec& n);

// phase of W(n)^k = e^{-pi i theta k(k-1) n1 n2} W(kn): exact value in Q/Z
struct WeylPower {
    Phase phase;
    IntVec exponent;
};
WeylPower weyl_power(const RationalAngle& theta, const IntVec& n, long k);

// Element of a covering of the rational rotation algebra: a finite sum
// sum_xi e^{2 pi i theta <xi, t>} (x) M_xi with xi in A^n Z^2 (frequencies
// stored theta-normalized) and M_xi in M_q(C).
class NCPoly {
public:
    NCPoly() = default;
    NCPoly(int level, int q, const Rat& theta) : level_(level), q_(q), theta_(theta) {}
    static NCPoly monomial(int level, const Rat& theta, const RatVec& xi,
                           const CoeffMatrix& m);

    int level() const { return level_; }
    int q() const { return q_; }
    const Rat& theta() const { return theta_; }
    const std::map<RatVec, CoeffMatrix>& terms() const { return terms_; }

    void add_term(const RatVec& xi, const CoeffMatrix& m);
    NCPoly operator+(const NCPoly& o) const;
    NCPoly operator-(const NCPoly& o) const;
    NCPoly operator*(const NCPoly& o) const;
    NCPoly scale(const Coeff& c) const;
    NCPoly adjoint() const;
    NCPoly pow(long k) const;  // unitary monomials only for k < 0
    bool is_zero() const;
    bool operator==(const NCPoly& o) const { return (*this - o).is_zero(); }
    NCPoly at_level(int level) const;

    // (1/q) tr of the zero-frequency coefficient: the canonical trace
    Coeff trace() const;

private:
    int level_ = 0;
    int q_ = 0;
    Rat theta_;
    std::map<RatVec, CoeffMatrix> terms_;
};

// gamma~_n(f)(t) = ad(W0(Jn)) [f(t - n)] for the translation vector n
NCPoly deck_action(const ClockShift& cs, const NCPoly& f, const RatVec& n);

// conditional expectation onto the fixed-point algebra of the level-1
// covering deck action (average over the group representatives)
NCPoly expectation_onto_base(const Tower& tw, const ClockShift& cs, const NCPoly& f);

// base generators U(t) = e^{2 pi i theta t_1} U0, V(t) = e^{2 pi i theta t_2} V0
NCPoly base_generator_u(const RationalAngle& theta);
NCPoly base_generator_v(const RationalAngle& theta);

// covering generators; requires det B = 1 mod q and |det B| > 1
struct CoveringGenerators {
    NCPoly U, V;
};
CoveringGenerators covering_generators(const intlat::IntMatrix& B,
                                       const RationalAngle& theta);

// commutation phase c with x y = e^{2 pi i c} y x for single-frequency
// monomials x, y; exact
Phase commutation_phase(const NCPoly& x, const NCPoly& y);

struct IdentityReport {
    bool clock_commutation = false;   // U0 V0 = e^{2 pi i theta} V0 U0
    bool weyl_power_law = false;      // matrix powers match the phase law
    bool u_fixed_point = false;       // U_B^a V_B^b == U
    bool v_fixed_point = false;       // U_B^c V_B^d == V
    bool theta_scaling = false;       // commutator phase of (U_B, V_B) = det B * theta
    bool base_scaling = false;        // commutator phase of (U^aV^b, U^cV^d) = det B * theta
    bool deck_invariance = false;     // gamma~_{Bm}(U_B) == U_B for lattice m
    std::string first_mismatch;       // diagnostic for the first failed identity
    bool all() const {
        return clock_commutation && weyl_power_law && u_fixed_point &&
               v_fixed_point && theta_scaling && base_scaling && deck_invariance;
    }
};
IdentityReport fixed_point_identities(const intlat::IntMatrix& B,
                                      const RationalAngle& theta);

// phi_n(W(m)): the n-th level image of the Weyl monomial in the 2I tower,
// e^{2 pi i theta <2^{-n} m, t>} W0(2^n m)
NCPoly level_image(const RationalAngle& theta, int n, const IntVec& m);

} // namespace solenoid::nctorus
