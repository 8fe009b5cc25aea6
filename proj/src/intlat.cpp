#include "solenoid/intlat.hpp"

#include <algorithm>
#include <sstream>

namespace solenoid::intlat {

IntMatrix IntMatrix::identity(int dim) {
    IntMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix r(p_);
    for (int i = 0; i < p_; ++i)
        for (int j = 0; j < p_; ++j) r.at(j, i) = at(i, j);
    return r;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    IntMatrix r(p_);
    for (int i = 0; i < p_; ++i)
        for (int k = 0; k < p_; ++k) {
            const Int& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < p_; ++j) r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

IntVec IntMatrix::operator*(const IntVec& v) const {
    IntVec r(p_, Int(0));
    for (int i = 0; i < p_; ++i)
        for (int j = 0; j < p_; ++j) r[i] += at(i, j) * v[j];
    return r;
}

Int IntMatrix::det() const {
    if (p_ == 0) return 1;
    if (p_ == 1) return at(0, 0);
    if (p_ == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    Int d = 0;
    for (int j = 0; j < p_; ++j) {
        if (at(0, j) == 0) continue;
        IntMatrix minor(p_ - 1);
        for (int r = 1; r < p_; ++r) {
            int cc = 0;
            for (int c = 0; c < p_; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = at(r, c);
            }
        }
        Int term = at(0, j) * minor.det();
        if (j % 2) d -= term; else d += term;
    }
    return d;
}

IntMatrix IntMatrix::adjugate() const {
    IntMatrix r(p_);
    if (p_ == 1) {
        r.at(0, 0) = 1;
        return r;
    }
    for (int i = 0; i < p_; ++i)
        for (int j = 0; j < p_; ++j) {
            IntMatrix minor(p_ - 1);
            int rr = 0;
            for (int a = 0; a < p_; ++a) {
                if (a == i) continue;
                int cc = 0;
                for (int b = 0; b < p_; ++b) {
                    if (b == j) continue;
                    minor.at(rr, cc++) = at(a, b);
                }
                ++rr;
            }
            Int cof = minor.det();
            if ((i + j) % 2) cof = -cof;
            r.at(j, i) = cof;  // transposed cofactors
        }
    return r;
}

IntMatrix IntMatrix::pow(int n) const {
    IntMatrix r = identity(p_);
    for (int i = 0; i < n; ++i) r = r * (*this);
    return r;
}

std::string IntMatrix::to_string() const {
    std::string s;
    for (int i = 0; i < p_; ++i) {
        if (i) s += ";";
        for (int j = 0; j < p_; ++j) {
            if (j) s += ",";
            s += at(i, j).str();
        }
    }
    return s;
}

IntMatrix parse_matrix(const std::string& text) {
    std::vector<std::vector<Int>> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) {
        std::vector<Int> entries;
        std::stringstream rs(row);
        std::string cell;
        while (std::getline(rs, cell, ',')) {
            cell.erase(std::remove_if(cell.begin(), cell.end(), ::isspace), cell.end());
            if (cell.empty())
                throw PreconditionError("empty matrix entry in '" + text + "'");
            try {
                entries.emplace_back(cell);
            } catch (const std::exception&) {
                throw PreconditionError("bad matrix entry '" + cell + "'");
            }
        }
        rows.push_back(std::move(entries));
    }
    if (rows.empty()) throw PreconditionError("empty matrix");
    const size_t p = rows.size();
    if (p > 8) throw PreconditionError("matrix dimension > 8 not supported");
    for (const auto& r : rows)
        if (r.size() != p)
            throw PreconditionError("matrix '" + text + "' is not square");
    IntMatrix m(static_cast<int>(p));
    for (size_t i = 0; i < p; ++i)
        for (size_t j = 0; j < p; ++j) m.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    return m;
}

RatMatrix RatMatrix::identity(int dim) {
    RatMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_int(const IntMatrix& m) {
    RatMatrix r(m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) r.at(i, j) = m.at(i, j);
    return r;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    RatMatrix r(p_);
    for (int i = 0; i < p_; ++i)
        for (int k = 0; k < p_; ++k) {
            const Rat& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < p_; ++j) r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

RatVec RatMatrix::operator*(const RatVec& v) const {
    RatVec r(p_, Rat(0));
    for (int i = 0; i < p_; ++i)
        for (int j = 0; j < p_; ++j) r[i] += at(i, j) * v[j];
    return r;
}

RatMatrix RatMatrix::pow(int n) const {
    RatMatrix r = identity(p_);
    for (int i = 0; i < n; ++i) r = r * (*this);
    return r;
}

Rat RatMatrix::frobenius_sq() const {
    Rat s = 0;
    for (const auto& x : a_) s += x * x;
    return s;
}

std::string RatMatrix::to_string() const {
    std::string s;
    for (int i = 0; i < p_; ++i) {
        if (i) s += ";";
        for (int j = 0; j < p_; ++j) {
            if (j) s += ",";
            s += rat_to_string(at(i, j));
        }
    }
    return s;
}

namespace {

void swap_rows(IntMatrix& m, int a, int b) {
    for (int j = 0; j < m.dim(); ++j) std::swap(m.at(a, j), m.at(b, j));
}
void swap_cols(IntMatrix& m, int a, int b) {
    for (int i = 0; i < m.dim(); ++i) std::swap(m.at(i, a), m.at(i, b));
}
// row[a] += q * row[b]
void add_row(IntMatrix& m, int a, int b, const Int& q) {
    for (int j = 0; j < m.dim(); ++j) m.at(a, j) += q * m.at(b, j);
}
void add_col(IntMatrix& m, int a, int b, const Int& q) {
    for (int i = 0; i < m.dim(); ++i) m.at(i, a) += q * m.at(i, b);
}
void negate_row(IntMatrix& m, int a) {
    for (int j = 0; j < m.dim(); ++j) m.at(a, j) = -m.at(a, j);
}

} // namespace

SmithForm smith_normal_form(const IntMatrix& B) {
    const int p = B.dim();
    if (B.det() == 0) throw PreconditionError("singular covering matrix");

    IntMatrix M = B;
    IntMatrix S = IntMatrix::identity(p);
    IntMatrix T = IntMatrix::identity(p);

    for (int t = 0; t < p; ++t) {
        for (;;) {
            // pivot: minimal nonzero |entry| in the trailing block, row-major ties
            int pi = -1, pj = -1;
            Int best;
            for (int i = t; i < p; ++i)
                for (int j = t; j < p; ++j) {
                    if (M.at(i, j) == 0) continue;
                    Int a = abs(M.at(i, j));
                    if (pi < 0 || a < best) { best = a; pi = i; pj = j; }
                }
            if (pi < 0) throw InvariantViolation("smith: trailing block vanished");
            if (pi != t) { swap_rows(M, t, pi); swap_rows(S, t, pi); }
            if (pj != t) { swap_cols(M, t, pj); swap_cols(T, t, pj); }

            bool reduced = true;
            for (int i = t + 1; i < p; ++i) {
                if (M.at(i, t) == 0) continue;
                Int q = floor_div(M.at(i, t), M.at(t, t));
                add_row(M, i, t, -q); add_row(S, i, t, -q);
                if (M.at(i, t) != 0) reduced = false;
            }
            for (int j = t + 1; j < p; ++j) {
                if (M.at(t, j) == 0) continue;
                Int q = floor_div(M.at(t, j), M.at(t, t));
                add_col(M, j, t, -q); add_col(T, j, t, -q);
                if (M.at(t, j) != 0) reduced = false;
            }
            if (!reduced) continue;

            // divisibility fix: pivot must divide every trailing entry
            bool fixed = true;
            for (int i = t + 1; i < p && fixed; ++i)
                for (int j = t + 1; j < p && fixed; ++j)
                    if (M.at(i, j) % M.at(t, t) != 0) {
                        add_row(M, t, i, Int(1)); add_row(S, t, i, Int(1));
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (M.at(t, t) < 0) { negate_row(M, t); negate_row(S, t); }
    }

    SmithForm f{S, T, M};
    // exact verification of the factorization and unimodularity
    if (!(S * B * T == M)) throw InvariantViolation("smith: S*B*T != D");
    Int ds = S.det(), dt = T.det();
    if (abs(ds) != 1 || abs(dt) != 1)
        throw InvariantViolation("smith: transforms not unimodular");
    for (int i = 0; i + 1 < p; ++i)
        if (M.at(i + 1, i + 1) % M.at(i, i) != 0)
            throw InvariantViolation("smith: divisibility chain broken");
    return f;
}

std::vector<Int> SmithForm::invariant_factors() const {
    std::vector<Int> d(D.dim());
    for (int i = 0; i < D.dim(); ++i) d[i] = D.at(i, i);
    return d;
}

IntMatrix cofactor_matrix(const IntMatrix& B) { return B.adjugate(); }

RatMatrix inverse_transpose(const IntMatrix& B) {
    Int d = B.det();
    if (d == 0) throw PreconditionError("singular covering matrix");
    IntMatrix adjT = B.adjugate().transpose();
    RatMatrix A(B.dim());
    for (int i = 0; i < B.dim(); ++i)
        for (int j = 0; j < B.dim(); ++j) A.at(i, j) = Rat(adjT.at(i, j)) / Rat(d);
    return A;
}

std::vector<Int> char_poly(const IntMatrix& B) {
    // Faddeev-LeVerrier; the divisions are exact for integer matrices.
    const int p = B.dim();
    std::vector<Int> c(p + 1, Int(0));
    c[p] = 1;
    IntMatrix M = IntMatrix::identity(p);
    for (int k = 1; k <= p; ++k) {
        M = B * M;
        Int tr = 0;
        for (int i = 0; i < p; ++i) tr += M.at(i, i);
        Int ck = -tr;
        if (ck % k != 0)
            throw InvariantViolation("char_poly: inexact division");
        ck /= k;
        c[p - k] = ck;
        for (int i = 0; i < p; ++i) M.at(i, i) += ck;
    }
    return c;
}

int schur_cohn_all_inside(std::vector<Int> f, int* step_out) {
    // trim leading zeros (descending side); f is ascending
    while (f.size() > 1 && f.back() == 0) f.pop_back();
    int step = 0;
    while (f.size() > 1) {
        ++step;
        const Int& c0 = f.front();
        const Int& cn = f.back();
        Int a0 = abs(c0), an = abs(cn);
        if (a0 >= an) {
            if (step_out) *step_out = step;
            return a0 == an ? 0 : -1;
        }
        const size_t n = f.size() - 1;
        std::vector<Int> g(n);
        for (size_t k = 1; k <= n; ++k) g[k - 1] = cn * f[k] - c0 * f[n - k];
        f = std::move(g);
        while (f.size() > 1 && f.back() == 0) f.pop_back();
        if (f.size() == 1 && f[0] == 0)
            throw InvariantViolation("schur_cohn: polynomial collapsed");
    }
    if (step_out) *step_out = step;
    return 1;
}

namespace {

// coefficients of f(lambda * z) cleared to integers, lambda = num/den > 0
std::vector<Int> scale_poly(const std::vector<Int>& f, const Int& num, const Int& den) {
    const size_t n = f.size() - 1;
    std::vector<Int> g(f.size());
    Int nk = 1;
    for (size_t k = 0; k <= n; ++k) {
        Int dk = 1;
        for (size_t j = 0; j < n - k; ++j) dk *= den;
        g[k] = f[k] * nk * dk;
        nk *= num;
    }
    return g;
}

} // namespace

ExpansionReport purely_expanding(const IntMatrix& B, int n_max) {
    if (B.det() == 0) throw PreconditionError("singular covering matrix");
    ExpansionReport rep;
    RatMatrix A = inverse_transpose(B);

    auto contraction_search = [&](int limit, int* found) -> std::vector<Rat> {
        std::vector<Rat> seq;
        RatMatrix P = RatMatrix::identity(B.dim());
        *found = -1;
        for (int n = 0; n <= limit; ++n) {
            seq.push_back(P.frobenius_sq());
            if (n > 0 && seq.back() < 1) { *found = n; break; }
            P = P * A;
        }
        return seq;
    };

    int found = -1;
    rep.norm_sq_sequence = contraction_search(n_max, &found);

    // char(A) has the reciprocal roots of char(B); the reversed integer
    // polynomial of char(B) carries them with integer coefficients.
    std::vector<Int> cb = char_poly(B);
    std::vector<Int> reversed(cb.rbegin(), cb.rend());
    int step = 0;
    int schur = schur_cohn_all_inside(reversed, &step);

    if (found >= 0) {
        rep.purely_expanding = true;
        rep.kind = CertificateKind::FrobeniusContraction;
        rep.contraction_exponent = found;
        rep.contraction_norm_sq = rep.norm_sq_sequence[found];
        if (schur != 1)
            throw InvariantViolation("expansion: contraction found but Schur-Cohn disagrees");
    } else if (schur == 1) {
        // expanding, but contraction is slower than n_max; extend the search
        rep.purely_expanding = true;
        rep.kind = CertificateKind::SchurStable;
        for (int limit = 2 * n_max; limit <= 64 * n_max && found < 0; limit *= 2)
            rep.norm_sq_sequence = contraction_search(limit, &found);
        if (found >= 0) {
            rep.contraction_exponent = found;
            rep.contraction_norm_sq = rep.norm_sq_sequence[found];
        }
    } else {
        rep.purely_expanding = false;
        rep.schur_step = step;
        if (schur == -1) {
            rep.kind = CertificateKind::RootOutside;
        } else {
            // Degenerate step: a reciprocal root pair also stalls the
            // reduction, so retest inside a slightly larger disk. A root
            // beyond radius 1 + 2^-10 is certified as strictly outside;
            // otherwise the maximal modulus lies in [1, 1 + 2^-10).
            Int den = Int(1) << 10, num = den + 1;
            int s2 = schur_cohn_all_inside(scale_poly(reversed, num, den));
            rep.kind = s2 == -1 ? CertificateKind::RootOutside
                                : CertificateKind::UnitModulusRoot;
        }
    }

    if (rep.purely_expanding && rep.contraction_exponent > 0) {
        // sum_n ||A^n|| <= (sum_{i<N} ||A^i||_F) / (1 - ||A^N||_F)
        const int N = rep.contraction_exponent;
        Rat partial = 0;
        for (int i = 0; i < N; ++i) partial += sqrt_upper(rep.norm_sq_sequence[i]);
        Rat qn = sqrt_upper(rep.norm_sq_sequence[N]);
        if (qn < 1) rep.tail_bound = partial / (Rat(1) - qn);
    }

    {
        // float spectral-radius hint for reports (never used in the decision):
        // Durand-Kerner on the reversed characteristic polynomial of B,
        // whose roots are the eigenvalues of A.
        std::vector<std::complex<double>> c(reversed.size());
        for (size_t i = 0; i < reversed.size(); ++i)
            c[i] = static_cast<double>(reversed[i]);
        const size_t n = c.size() - 1;
        for (auto& x : c) x /= static_cast<double>(reversed.back());
        std::vector<std::complex<double>> z(n);
        for (size_t i = 0; i < n; ++i)
            z[i] = std::pow(std::complex<double>(0.4, 0.9), static_cast<double>(i + 1));
        for (int it = 0; it < 200; ++it) {
            for (size_t i = 0; i < n; ++i) {
                std::complex<double> fz = 0;
                for (size_t k = c.size(); k-- > 0;) fz = fz * z[i] + c[k];
                std::complex<double> d = 1;
                for (size_t j = 0; j < n; ++j)
                    if (j != i) d *= z[i] - z[j];
                z[i] -= fz / d;
            }
        }
        double m = 0;
        for (auto& zi : z) m = std::max(m, std::abs(zi));
        rep.spectral_radius_hint = m;
    }
    return rep;
}

} // namespace solenoid::intlat
