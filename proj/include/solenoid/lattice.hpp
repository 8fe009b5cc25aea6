#pragma once

#include "solenoid/intlat.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <vector>

namespace solenoid::lattice {

using intlat::IntMatrix;
using intlat::RatMatrix;

// Element of Q/Z stored as a reduced rational in [0,1); represents the
// unit complex number e^{2 pi i value}.
class Phase {
public:
    Phase() : v_(0) {}
    explicit Phase(const Rat& x) : v_(rat_frac(x)) {}

    const Rat& value() const { return v_; }
    Phase operator+(const Phase& o) const { return Phase(v_ + o.v_); }
    Phase operator-(const Phase& o) const { return Phase(v_ - o.v_); }
    Phase operator-() const { return Phase(-v_); }
    bool operator==(const Phase& o) const { return v_ == o.v_; }
    bool operator!=(const Phase& o) const { return v_ != o.v_; }
    bool operator<(const Phase& o) const { return v_ < o.v_; }
    bool is_zero() const { return v_ == 0; }

    std::complex<double> to_complex() const {
        const Int& den = denominator(v_);
        if (den <= 4 && 4 % den == 0) {  // quarter turns are exact
            long q = static_cast<long>(numerator(v_) * (4 / den));
            switch (q) {
                case 0: return {1, 0};
                case 1: return {0, 1};
                case 2: return {-1, 0};
                default: return {0, -1};
            }
        }
        double t = 2.0 * M_PI * to_double(v_);
        return {std::cos(t), std::sin(t)};
    }

private:
    Rat v_;
};

// <x,y> = exp(2 pi i sum_a x_a y_a) as an exact phase
inline Phase pairing(const RatVec& x, const RatVec& y) { return Phase(dot(x, y)); }

// The deck group Z^p/BZ^p and its dual AZ^p/Z^p, A = (B^T)^{-1}, with
// canonical representatives on both sides.
struct QuotientGroup {
    IntMatrix B;
    RatMatrix A;
    Int order;                        // r = |det B|
    std::vector<Int> factors;         // invariant factors d_1 | ... | d_p
    std::vector<RatVec> dual_reps;    // s(k) in AZ^p intersect [0,1)^p, lex-sorted
    std::vector<IntVec> group_reps;   // s_hat(k) in Z^p intersect B[0,1)^p, lex-sorted

    int r() const { return static_cast<int>(order); }
    int p() const { return B.dim(); }
    int identity_dual() const;        // index of the zero dual rep
    int identity_group() const;       // index of the zero group rep

    // index of the dual class of a canonical representative in [0,1)^p
    int dual_index(const RatVec& rep) const;
    // class of an arbitrary point of AZ^p: index of frac(xi)
    int dual_class_of(const RatVec& xi) const;
    int dual_add(int j, int k) const;  // Cayley table, built lazily
    int dual_neg(int k) const;
    RatVec group_rep_rat(int g) const;

private:
    void build_tables() const;
    mutable std::map<RatVec, int> dual_lookup_;
    mutable std::vector<std::vector<int>> add_table_;
    mutable std::vector<int> neg_table_;
    friend QuotientGroup enumerate_quotient(const IntMatrix&);
};

// Exactly |det B| representatives on each side; throws on |det B| <= 1.
QuotientGroup enumerate_quotient(const IntMatrix& B);

// Verifies sum_{k in dual} <k, g> = delta_{g,e} |Gamma| for every g, exactly:
// for g != e the phase multiset must be a union of complete nontrivial
// cyclic coset ladders {c, c+1/d, ..., c+(d-1)/d}, d > 1.
struct SchurCheck {
    bool ok = true;
    std::optional<int> offending_group_index;
};
SchurCheck schur_orthogonality_check(const QuotientGroup& G);

// Level-n section s_n(k) = A^{n-1} s_1(k), the unique one with values in
// A^{n-1}[0,1)^p.
class Tower {
public:
    explicit Tower(const IntMatrix& B);

    const QuotientGroup& group() const { return G_; }
    const IntMatrix& B() const { return G_.B; }
    int p() const { return G_.p(); }
    int r() const { return G_.r(); }

    const RatMatrix& A_pow(int n) const;       // A^n
    const IntMatrix& Bt_pow(int n) const;      // (B^T)^n
    RatVec section(int level, int k) const;    // s_level(k), level >= 1
    bool in_lattice(int level, const RatVec& xi) const;  // xi in A^level Z^p

    // dual class of xi in A^n Z^p / A^{n-1} Z^p (canonical label in Z_B-hat)
    int top_class(int level, const RatVec& xi) const;

private:
    QuotientGroup G_;
    mutable std::vector<RatMatrix> a_pows_;
    mutable std::vector<IntMatrix> bt_pows_;
};

struct Cocycle {
    int level;
    // omega(j,k) = s_n(j) + s_n(k) - s_n(j o k), values in A^{n-1} Z^p
    std::vector<std::vector<RatVec>> table;
};
Cocycle cocycle_table(const Tower& tw, int level);

struct ModeDecomposition {
    IntVec m;                    // integer part
    std::vector<int> classes;    // k_1 ... k_n (dual class indices)
};

// xi = m + sum_h s_h(k_h), exact; throws if xi is not a level-n frequency.
RatVec mode_bijection_fwd(const Tower& tw, int level, const IntVec& m,
                          const std::vector<int>& classes);
ModeDecomposition mode_bijection_inv(const Tower& tw, int level, RatVec xi);

struct LatticePoint {
    IntVec m;       // coordinates: xi = A^n m
    RatVec xi;      // embedded point
    Rat norm_sq;
};

// All xi in A^n Z^p with ||xi||^2 <= R^2, complete by construction,
// ordered lexicographically by the coordinate vector m.
std::vector<LatticePoint> enumerate_ball(const Tower& tw, int level, const Rat& R);

} // namespace solenoid::lattice
