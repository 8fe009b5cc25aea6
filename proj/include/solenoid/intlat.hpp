#pragma once

#include "solenoid/intmath.hpp"

#include <optional>
#include <string>
#include <vector>

namespace solenoid::intlat {

// Dense p x p matrix over arbitrary-precision integers. Row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(int dim) : p_(dim), a_(dim * dim, Int(0)) {}
    static IntMatrix identity(int dim);

    int dim() const { return p_; }
    Int& at(int i, int j) { return a_[i * p_ + j]; }
    const Int& at(int i, int j) const { return a_[i * p_ + j]; }

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& o) const;
    IntVec operator*(const IntVec& v) const;
    bool operator==(const IntMatrix& o) const = default;

    Int det() const;               // Laplace expansion; p <= 8 by contract
    IntMatrix adjugate() const;    // adj(B) with B*adj(B) = det(B)*I
    IntMatrix pow(int n) const;    // n >= 0

    std::string to_string() const; // rows ';'-separated, entries ','-separated

private:
    int p_ = 0;
    std::vector<Int> a_;
};

// Parses the "a,b;c,d" text format used by the CLI and the tests.
IntMatrix parse_matrix(const std::string& text);

class RatMatrix {
public:
    RatMatrix() = default;
    explicit RatMatrix(int dim) : p_(dim), a_(dim * dim, Rat(0)) {}
    static RatMatrix identity(int dim);
    static RatMatrix from_int(const IntMatrix& m);

    int dim() const { return p_; }
    Rat& at(int i, int j) { return a_[i * p_ + j]; }
    const Rat& at(int i, int j) const { return a_[i * p_ + j]; }

    RatMatrix operator*(const RatMatrix& o) const;
    RatVec operator*(const RatVec& v) const;
    bool operator==(const RatMatrix& o) const = default;

    RatMatrix pow(int n) const;
    Rat frobenius_sq() const;
    std::string to_string() const;

private:
    int p_ = 0;
    std::vector<Rat> a_;
};

struct SmithForm {
    IntMatrix S, T;    // unimodular, S*B*T = D
    IntMatrix D;       // diagonal, positive entries, d_i | d_{i+1}
    std::vector<Int> invariant_factors() const;
};

// S*B*T = D by elementary row/column reduction, pivot = minimal nonzero
// |entry|, ties broken in row-major order.
SmithForm smith_normal_form(const IntMatrix& B);

// adj(B); for p = 2 this is (d,-c;-b,a).
IntMatrix cofactor_matrix(const IntMatrix& B);

// A = (B^T)^{-1} over the rationals.
RatMatrix inverse_transpose(const IntMatrix& B);

// Monic characteristic polynomial of an integer matrix, ascending
// coefficients c[0] + c[1] x + ... + c[p] x^p with c[p] = 1.
std::vector<Int> char_poly(const IntMatrix& B);

enum class CertificateKind {
    FrobeniusContraction,  // exact ||A^N||_F < 1 found
    SchurStable,           // Schur-Cohn certified all roots of char(A) inside the disk
    RootOutside,           // Schur-Cohn witness: char(A) has a root with |root| >= 1
    UnitModulusRoot,       // degenerate Schur-Cohn step: boundary spectrum
};

struct ExpansionReport {
    bool purely_expanding = false;
    CertificateKind kind = CertificateKind::RootOutside;
    int contraction_exponent = -1;      // N with ||A^N||_F < 1, when found
    Rat contraction_norm_sq;            // exact ||A^N||_F^2 at that N
    int schur_step = -1;                // reduction step of the witness, when used
    std::vector<Rat> norm_sq_sequence;  // ||A^n||_F^2 for n = 0..N
    std::optional<Rat> tail_bound;      // rational upper bound on sum_n ||A^n||
    double spectral_radius_hint = 0.0;  // float eigenvalue estimate, display only
};

// Exact decision of "B purely expanding" (all roots of char(A) strictly
// inside the unit disk), via Frobenius contraction search then Schur-Cohn.
ExpansionReport purely_expanding(const IntMatrix& B, int n_max = 64);

// Schur-Cohn test on an integer polynomial (ascending coefficients):
// returns +1 if all roots are strictly inside the unit disk, -1 if some
// root has modulus > 1 is certified, 0 for a degenerate (boundary) step.
// step_out reports the reduction step that decided.
int schur_cohn_all_inside(std::vector<Int> poly, int* step_out = nullptr);

} // namespace solenoid::intlat
