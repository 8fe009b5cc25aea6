#pragma once

#include "solenoid/coeff.hpp"
#include "solenoid/lattice.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace solenoid::covalg {

using coeff::Coeff;
using lattice::Tower;

// f(t) = sum_xi c_xi e^{2 pi i <xi, t>}, finitely supported. The container
// is lattice-agnostic; covering operations validate keys against the tower.
class TrigPoly {
public:
    TrigPoly() = default;
    TrigPoly(int level, int p) : level_(level), p_(p) {}
    static TrigPoly monomial(int level, const RatVec& xi, const Coeff& c = Coeff(1));
    static TrigPoly constant(int level, int p, const Coeff& c);

    int level() const { return level_; }
    int p() const { return p_; }
    const std::map<RatVec, Coeff>& terms() const { return terms_; }

    void add_term(const RatVec& xi, const Coeff& c);  // accumulate; prune zeros
    Coeff coefficient(const RatVec& xi) const;

    TrigPoly operator+(const TrigPoly& o) const;
    TrigPoly operator-(const TrigPoly& o) const;
    TrigPoly operator*(const TrigPoly& o) const;  // convolution of coefficients
    TrigPoly scale(const Coeff& c) const;
    TrigPoly adjoint() const;                     // c_xi -> conj(c_{-xi})

    bool is_zero() const;
    // maps are pruned of zero coefficients, so lockstep comparison works
    bool operator==(const TrigPoly& o) const;

    // re-tags the element at a different covering level (inclusion of
    // algebras); key membership is the caller's responsibility
    TrigPoly at_level(int level) const;

    // zero-frequency coefficient = normalized trace on the level torus
    Coeff trace() const;
    // sum |c_xi|^2, exact
    Coeff l2_norm_sq() const;

    std::complex<double> eval(const RatVec& t) const;
    size_t size() const { return terms_.size(); }

private:
    int level_ = 0;
    int p_ = 0;
    std::map<RatVec, Coeff> terms_;
};

// Sparse square matrix of trig polynomials, indexed by dual classes.
struct MatPoly {
    int size = 0;
    int level = 0;
    int p = 0;
    std::map<std::pair<int, int>, TrigPoly> entries;

    static MatPoly identity(int size, int level, int p);
    TrigPoly entry(int h, int k) const;
    void set(int h, int k, TrigPoly f);
    MatPoly operator*(const MatPoly& o) const;
    MatPoly operator+(const MatPoly& o) const;
    MatPoly adjoint() const;
    bool operator==(const MatPoly& o) const;
};

// ---- covering operations on the lattice tower ----

// dual class of the monomial e^{2 pi i <xi, t>} under the level-n deck
// action (the class k with gamma_g(m_xi) = <k,g> m_xi)
int monomial_class(const Tower& tw, int level, const RatVec& xi);

// translation by g: c_xi -> <xi,-g> c_xi
TrigPoly deck_action(const TrigPoly& f, const RatVec& g);
// deck transformation attached to a group element index (translation by
// the canonical representative lifted to the level)
TrigPoly deck_action_group(const Tower& tw, int level, int g, const TrigPoly& f);

// E_k: keeps the coefficients in the k-th eigenspace of the deck action
TrigPoly eigenspace_project(const Tower& tw, int level, int k, const TrigPoly& f);

// sigma(k)(t) = conj<s_n(k), t>, the canonical eigenspace unitary
TrigPoly sigma_unitary(const Tower& tw, int level, int k);

// M(b)_{hk} = sigma(h)^{-1} b_{h-k} sigma(k); entries live one level down
MatPoly matrix_embed(const Tower& tw, int level, const TrigPoly& b);

// b -> (a_j), a_j = sigma(j)^{-1} b_j, the coefficient-level L^2 isometry
std::vector<TrigPoly> l2_isometry(const Tower& tw, int level, const TrigPoly& b);

struct CanSolution {
    std::vector<std::vector<TrigPoly>> a;  // a[j][k], base-level elements
    bool verified = false;                 // reconstruction matched exactly
};

// Solves can(sum_{j,k} sigma(j) a_{j,k} (x) sigma(k)) = (b(g))_g for the
// unique base coefficients and verifies the reconstruction exactly.
CanSolution can_solve(const Tower& tw, int level, const std::vector<TrigPoly>& targets);

// ---- finite-dimensional coverings and regularity ----

// dense matrix over exact complex coefficients
class CoeffMatrix {
public:
    CoeffMatrix() = default;
    explicit CoeffMatrix(int n) : n_(n), a_(n * n) {}
    static CoeffMatrix identity(int n);

    int dim() const { return n_; }
    Coeff& at(int i, int j) { return a_[i * n_ + j]; }
    const Coeff& at(int i, int j) const { return a_[i * n_ + j]; }

    CoeffMatrix operator*(const CoeffMatrix& o) const;
    CoeffMatrix operator+(const CoeffMatrix& o) const;
    CoeffMatrix operator-(const CoeffMatrix& o) const;
    CoeffMatrix scale(const Coeff& c) const;
    CoeffMatrix adjoint() const;
    bool is_zero() const;
    bool operator==(const CoeffMatrix& o) const { return (*this - o).is_zero(); }

    // exactly one nonzero single-phase entry per row and per column
    bool is_monomial() const;
    Coeff det() const;  // permutation expansion; n <= 6
    std::complex<double> entry_complex(int i, int j) const { return at(i, j).to_complex(); }

private:
    int n_ = 0;
    std::vector<Coeff> a_;
};

// A matrix algebra M_q acted upon by a finite abelian group, each
// generator acting by conjugation with a monomial unitary.
struct FinDimCovering {
    int q = 0;
    std::vector<int> cyclic_orders;     // Gamma = Z_{m_1} x ... x Z_{m_t}
    std::vector<CoeffMatrix> gens;      // conjugating unitaries
    void validate() const;
    long group_order() const;
};

struct EigenspaceReport {
    std::vector<int> character;          // (k_1, ..., k_t)
    std::vector<CoeffMatrix> basis;      // exact basis of B_k
    bool has_invertible = false;
    std::optional<CoeffMatrix> invertible_sample;
    // float polar unitary of the sample (entries), when invertible
    std::vector<std::vector<std::complex<double>>> polar_unitary;
};

// Decides, per character, whether the eigenspace contains an invertible
// element: the determinant as a polynomial in the basis coordinates is
// expanded symbolically for q <= 4 and tested for identical vanishing;
// larger q falls back to evaluation at q^2+1 seeded rational points.
std::vector<EigenspaceReport> regularity_check(const FinDimCovering& cov,
                                               std::uint64_t seed = 0);

// the lattice-covering side of the same check: every class has sigma(k)
std::vector<TrigPoly> regularity_lattice(const Tower& tw, int level);

} // namespace solenoid::covalg
