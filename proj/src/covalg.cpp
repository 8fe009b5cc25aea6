#include "solenoid/covalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <numeric>
#include <random>

namespace solenoid::covalg {

using lattice::Phase;

TrigPoly TrigPoly::monomial(int level, const RatVec& xi, const Coeff& c) {
    TrigPoly f(level, static_cast<int>(xi.size()));
    f.add_term(xi, c);
    return f;
}

TrigPoly TrigPoly::constant(int level, int p, const Coeff& c) {
    return monomial(level, RatVec(p, Rat(0)), c);
}

void TrigPoly::add_term(const RatVec& xi, const Coeff& c) {
    auto it = terms_.find(xi);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(xi, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

Coeff TrigPoly::coefficient(const RatVec& xi) const {
    auto it = terms_.find(xi);
    return it == terms_.end() ? Coeff() : it->second;
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
    TrigPoly r = *this;
    r.level_ = std::max(level_, o.level_);
    if (p_ == 0) r.p_ = o.p_;
    for (const auto& [xi, c] : o.terms_) r.add_term(xi, c);
    return r;
}

TrigPoly TrigPoly::operator-(const TrigPoly& o) const {
    TrigPoly r = *this;
    r.level_ = std::max(level_, o.level_);
    if (p_ == 0) r.p_ = o.p_;
    for (const auto& [xi, c] : o.terms_) r.add_term(xi, -c);
    return r;
}

TrigPoly TrigPoly::operator*(const TrigPoly& o) const {
    TrigPoly r(std::max(level_, o.level_), p_ ? p_ : o.p_);
    for (const auto& [xi, c] : terms_)
        for (const auto& [eta, d] : o.terms_) r.add_term(vec_add(xi, eta), c * d);
    return r;
}

TrigPoly TrigPoly::scale(const Coeff& c) const {
    TrigPoly r(level_, p_);
    for (const auto& [xi, x] : terms_) r.add_term(xi, x * c);
    return r;
}

TrigPoly TrigPoly::adjoint() const {
    TrigPoly r(level_, p_);
    for (const auto& [xi, c] : terms_) r.add_term(vec_neg(xi), c.conj());
    return r;
}

bool TrigPoly::is_zero() const {
    for (const auto& [xi, c] : terms_)
        if (!c.is_zero()) return false;
    return true;
}

bool TrigPoly::operator==(const TrigPoly& o) const {
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() && b != o.terms_.end()) {
        if (a->first != b->first) {
            // an unmatched key must carry a hidden zero (cyclotomic) coefficient
            if (a->first < b->first) {
                if (!a->second.is_zero()) return false;
                ++a;
            } else {
                if (!b->second.is_zero()) return false;
                ++b;
            }
            continue;
        }
        if (!(a->second - b->second).is_zero()) return false;
        ++a;
        ++b;
    }
    for (; a != terms_.end(); ++a)
        if (!a->second.is_zero()) return false;
    for (; b != o.terms_.end(); ++b)
        if (!b->second.is_zero()) return false;
    return true;
}

TrigPoly TrigPoly::at_level(int level) const {
    TrigPoly r = *this;
    r.level_ = level;
    return r;
}

Coeff TrigPoly::trace() const { return coefficient(RatVec(p_, Rat(0))); }

Coeff TrigPoly::l2_norm_sq() const {
    Coeff s;
    for (const auto& [xi, c] : terms_) s += c.abs_sq();
    return s;
}

std::complex<double> TrigPoly::eval(const RatVec& t) const {
    std::complex<double> z = 0;
    for (const auto& [xi, c] : terms_)
        z += c.to_complex() * Phase(dot(xi, t)).to_complex();
    return z;
}

MatPoly MatPoly::identity(int size, int level, int p) {
    MatPoly m{size, level, p, {}};
    for (int j = 0; j < size; ++j)
        m.entries[{j, j}] = TrigPoly::constant(level, p, Coeff(1));
    return m;
}

TrigPoly MatPoly::entry(int h, int k) const {
    auto it = entries.find({h, k});
    return it == entries.end() ? TrigPoly(level, p) : it->second;
}

void MatPoly::set(int h, int k, TrigPoly f) {
    if (f.is_zero()) entries.erase({h, k});
    else entries[{h, k}] = std::move(f);
}

MatPoly MatPoly::operator*(const MatPoly& o) const {
    // index the right factor by row once
    std::map<int, std::vector<std::pair<int, const TrigPoly*>>> rows;
    for (const auto& [hk, f] : o.entries) rows[hk.first].push_back({hk.second, &f});

    MatPoly r{size, std::max(level, o.level), p, {}};
    for (const auto& [hk, f] : entries) {
        auto it = rows.find(hk.second);
        if (it == rows.end()) continue;
        for (const auto& [k, g] : it->second) {
            TrigPoly prod = f * *g;
            if (prod.is_zero()) continue;
            auto key = std::make_pair(hk.first, k);
            auto rit = r.entries.find(key);
            if (rit == r.entries.end()) r.entries.emplace(key, std::move(prod));
            else rit->second = rit->second + prod;
        }
    }
    for (auto it = r.entries.begin(); it != r.entries.end();)
        it = it->second.is_zero() ? r.entries.erase(it) : std::next(it);
    return r;
}

MatPoly MatPoly::operator+(const MatPoly& o) const {
    MatPoly r = *this;
    for (const auto& [hk, f] : o.entries) {
        auto it = r.entries.find(hk);
        if (it == r.entries.end()) r.entries.emplace(hk, f);
        else it->second = it->second + f;
    }
    for (auto it = r.entries.begin(); it != r.entries.end();)
        it = it->second.is_zero() ? r.entries.erase(it) : std::next(it);
    return r;
}

MatPoly MatPoly::adjoint() const {
    MatPoly r{size, level, p, {}};
    for (const auto& [hk, f] : entries)
        r.entries[{hk.second, hk.first}] = f.adjoint();
    return r;
}

bool MatPoly::operator==(const MatPoly& o) const {
    if (size != o.size) return false;
    for (const auto& [hk, f] : entries) {
        auto it = o.entries.find(hk);
        if (it == o.entries.end()) {
            if (!f.is_zero()) return false;
        } else if (!(f == it->second)) {
            return false;
        }
    }
    for (const auto& [hk, f] : o.entries)
        if (!entries.count(hk) && !f.is_zero()) return false;
    return true;
}

int monomial_class(const Tower& tw, int level, const RatVec& xi) {
    // gamma_g(m_xi) = <xi, -g_hat> m_xi, hence the class of -xi labels it
    return tw.top_class(level, vec_neg(xi));
}

TrigPoly deck_action(const TrigPoly& f, const RatVec& g) {
    TrigPoly r(f.level(), f.p());
    for (const auto& [xi, c] : f.terms())
        r.add_term(xi, c * Coeff::unit(-lattice::pairing(xi, g)));
    return r;
}

TrigPoly deck_action_group(const Tower& tw, int level, int g, const TrigPoly& f) {
    // translation by B^{n-1} s_hat(g), the level-n lift of the deck element
    RatVec gh = tw.group().group_rep_rat(g);
    RatVec lifted = intlat::RatMatrix::from_int(tw.B().pow(level - 1)) * gh;
    return deck_action(f, lifted);
}

TrigPoly eigenspace_project(const Tower& tw, int level, int k, const TrigPoly& f) {
    TrigPoly r(f.level(), f.p());
    for (const auto& [xi, c] : f.terms())
        if (monomial_class(tw, level, xi) == k) r.add_term(xi, c);
    return r;
}

TrigPoly sigma_unitary(const Tower& tw, int level, int k) {
    return TrigPoly::monomial(level, vec_neg(tw.section(level, k)));
}

MatPoly matrix_embed(const Tower& tw, int level, const TrigPoly& b) {
    if (level < 1) throw PreconditionError("matrix_embed needs level >= 1");
    const int r = tw.r();
    MatPoly M{r, level - 1, tw.p(), {}};
    const auto& G = tw.group();

    // split b into eigenspace components once
    std::vector<TrigPoly> parts(r, TrigPoly(level, tw.p()));
    for (const auto& [xi, c] : b.terms())
        parts[monomial_class(tw, level, xi)].add_term(xi, c);

    std::vector<RatVec> sec(r);
    std::vector<int> occupied;
    for (int k = 0; k < r; ++k) {
        sec[k] = tw.section(level, k);
        if (!parts[k].is_zero()) occupied.push_back(k);
    }

    // only the occupied eigenspaces contribute: k = h - diff per class
    for (int h = 0; h < r; ++h) {
        for (int diff : occupied) {
            int k = G.dual_add(h, G.dual_neg(diff));
            // sigma(h)^{-1} b_{h-k} sigma(k): shift frequencies by s(h)-s(k)
            RatVec shift = vec_sub(sec[h], sec[k]);
            TrigPoly e(level - 1, tw.p());
            for (const auto& [xi, c] : parts[diff].terms()) {
                RatVec key = vec_add(xi, shift);
                if (!tw.in_lattice(level - 1, key))
                    throw InvariantViolation("matrix_embed entry escaped the base lattice");
                e.add_term(key, c);
            }
            M.set(h, k, std::move(e));
        }
    }
    return M;
}

std::vector<TrigPoly> l2_isometry(const Tower& tw, int level, const TrigPoly& b) {
    const int r = tw.r();
    std::vector<TrigPoly> out;
    out.reserve(r);
    for (int j = 0; j < r; ++j) {
        TrigPoly bj = eigenspace_project(tw, level, j, b);
        TrigPoly aj = TrigPoly::monomial(level, tw.section(level, j)) * bj;
        for (const auto& [xi, c] : aj.terms()) {
            (void)c;
            if (!tw.in_lattice(level - 1, xi))
                throw InvariantViolation("l2_isometry component escaped the base lattice");
        }
        out.push_back(aj.at_level(level - 1));
    }
    return out;
}

CanSolution can_solve(const Tower& tw, int level, const std::vector<TrigPoly>& targets) {
    const int r = tw.r();
    if (static_cast<int>(targets.size()) != r)
        throw PreconditionError("can_solve needs one target per group element");
    const auto& G = tw.group();
    const Rat inv_r = Rat(1) / Rat(G.order);

    CanSolution sol;
    sol.a.assign(r, std::vector<TrigPoly>(r));
    for (int l = 0; l < r; ++l) {
        // sum_g <g,l> b(g) sigma(l)^{-1} = r * sum_j sigma(j) a_{j,l}
        TrigPoly acc(level, tw.p());
        for (int g = 0; g < r; ++g) {
            Phase chi = lattice::pairing(G.dual_reps[l], G.group_rep_rat(g));
            acc = acc + targets[g].scale(Coeff::unit(chi, inv_r));
        }
        acc = acc * TrigPoly::monomial(level, tw.section(level, l));  // sigma(l)^{-1}
        for (int j = 0; j < r; ++j) {
            TrigPoly piece = eigenspace_project(tw, level, j, acc);
            TrigPoly aj = TrigPoly::monomial(level, tw.section(level, j)) * piece;
            sol.a[j][l] = aj.at_level(level - 1);
        }
    }

    // reconstruct: b'(g) = sum_{j,k} <-g,k> sigma(j) a_{j,k} sigma(k)
    sol.verified = true;
    for (int g = 0; g < r; ++g) {
        TrigPoly recon(level, tw.p());
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k) {
                if (sol.a[j][k].is_zero()) continue;
                Phase chi = -lattice::pairing(G.dual_reps[k], G.group_rep_rat(g));
                TrigPoly term = sigma_unitary(tw, level, j) *
                                sol.a[j][k].at_level(level) *
                                sigma_unitary(tw, level, k);
                recon = recon + term.scale(Coeff::unit(chi));
            }
        if (!(recon == targets[g])) {
            sol.verified = false;
            break;
        }
    }
    return sol;
}

// ---- finite-dimensional part ----

CoeffMatrix CoeffMatrix::identity(int n) {
    CoeffMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Coeff(1);
    return m;
}

CoeffMatrix CoeffMatrix::operator*(const CoeffMatrix& o) const {
    CoeffMatrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (int j = 0; j < n_; ++j) {
                if (o.at(k, j).is_zero()) continue;
                r.at(i, j) += at(i, k) * o.at(k, j);
            }
        }
    return r;
}

CoeffMatrix CoeffMatrix::operator+(const CoeffMatrix& o) const {
    CoeffMatrix r(n_);
    for (int i = 0; i < n_ * n_; ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

CoeffMatrix CoeffMatrix::operator-(const CoeffMatrix& o) const {
    CoeffMatrix r(n_);
    for (int i = 0; i < n_ * n_; ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

CoeffMatrix CoeffMatrix::scale(const Coeff& c) const {
    CoeffMatrix r(n_);
    for (int i = 0; i < n_ * n_; ++i) r.a_[i] = a_[i] * c;
    return r;
}

CoeffMatrix CoeffMatrix::adjoint() const {
    CoeffMatrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r.at(j, i) = at(i, j).conj();
    return r;
}

bool CoeffMatrix::is_zero() const {
    for (const auto& c : a_)
        if (!c.is_zero()) return false;
    return true;
}

bool CoeffMatrix::is_monomial() const {
    for (int i = 0; i < n_; ++i) {
        int nz = 0;
        for (int j = 0; j < n_; ++j)
            if (!at(i, j).is_zero()) {
                ++nz;
                if (!at(i, j).is_single_phase()) return false;
            }
        if (nz != 1) return false;
    }
    for (int j = 0; j < n_; ++j) {
        int nz = 0;
        for (int i = 0; i < n_; ++i)
            if (!at(i, j).is_zero()) ++nz;
        if (nz != 1) return false;
    }
    return true;
}

Coeff CoeffMatrix::det() const {
    if (n_ > 6) throw PreconditionError("exact determinant limited to n <= 6");
    std::vector<int> perm(n_);
    std::iota(perm.begin(), perm.end(), 0);
    Coeff d;
    do {
        int inv = 0;
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (perm[i] > perm[j]) ++inv;
        Coeff term(inv % 2 ? -1 : 1);
        for (int i = 0; i < n_ && !term.is_zero(); ++i) term *= at(i, perm[i]);
        d += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return d;
}

void FinDimCovering::validate() const {
    if (q < 1) throw PreconditionError("fixture needs q >= 1");
    if (cyclic_orders.size() != gens.size())
        throw PreconditionError("one conjugating unitary per cyclic factor");
    for (size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].dim() != q) throw PreconditionError("generator dimension mismatch");
        if (!gens[i].is_monomial())
            throw PreconditionError("fixture generators must be monomial unitaries");
        // U^m must be scalar so that conjugation has the stated order
        CoeffMatrix pw = CoeffMatrix::identity(q);
        for (int t = 0; t < cyclic_orders[i]; ++t) pw = pw * gens[i];
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b)
                if (a != b && !pw.at(a, b).is_zero())
                    throw PreconditionError("generator order does not match its cyclic factor");
        for (int a = 1; a < q; ++a)
            if (!(pw.at(a, a) - pw.at(0, 0)).is_zero())
                throw PreconditionError("generator power is not scalar");
    }
    // pairwise commutation up to phase
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i + 1; j < gens.size(); ++j) {
            CoeffMatrix lhs = gens[i] * gens[j];
            CoeffMatrix rhs = gens[j] * gens[i];
            // lhs = phase * rhs entrywise: find the first nonzero entry
            Coeff ratio;
            bool found = false;
            for (int a = 0; a < q && !found; ++a)
                for (int b = 0; b < q && !found; ++b)
                    if (!rhs.at(a, b).is_zero() && rhs.at(a, b).is_single_phase()) {
                        const auto& t = rhs.at(a, b).terms()[0];
                        const auto& l = lhs.at(a, b);
                        if (!l.is_single_phase() || l.is_zero())
                            throw PreconditionError("generators do not commute up to phase");
                        const auto& lt = l.terms()[0];
                        ratio = Coeff::unit(lt.phase - t.phase, lt.mag / t.mag);
                        found = true;
                    }
            if (!(lhs - rhs.scale(ratio)).is_zero())
                throw PreconditionError("generators do not commute up to phase");
        }
}

long FinDimCovering::group_order() const {
    long n = 1;
    for (int m : cyclic_orders) n *= m;
    return n;
}

namespace {

// multivariate polynomial with Coeff coefficients, exponent-vector keys
using Poly = std::map<std::vector<int>, Coeff>;

void poly_add(Poly& p, const std::vector<int>& e, const Coeff& c) {
    auto it = p.find(e);
    if (it == p.end()) {
        if (!c.is_zero()) p.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

bool det_identically_zero_symbolic(const std::vector<CoeffMatrix>& basis, int q) {
    const int m = static_cast<int>(basis.size());
    std::vector<int> perm(q);
    std::iota(perm.begin(), perm.end(), 0);
    Poly det;
    do {
        int inv = 0;
        for (int i = 0; i < q; ++i)
            for (int j = i + 1; j < q; ++j)
                if (perm[i] > perm[j]) ++inv;
        Poly row{{std::vector<int>(m, 0), Coeff(inv % 2 ? -1 : 1)}};
        for (int i = 0; i < q; ++i) {
            Poly next;
            for (const auto& [e, c] : row)
                for (int v = 0; v < m; ++v) {
                    const Coeff& entry = basis[v].at(i, perm[i]);
                    if (entry.is_zero()) continue;
                    std::vector<int> e2 = e;
                    ++e2[v];
                    poly_add(next, e2, c * entry);
                }
            row = std::move(next);
            if (row.empty()) break;
        }
        for (const auto& [e, c] : row) poly_add(det, e, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det.empty();
}

bool det_identically_zero_schwartz(const std::vector<CoeffMatrix>& basis, int q,
                                   std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-8, 8), den(1, 4);
    for (int trial = 0; trial < q * q + 1; ++trial) {
        Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(q, q);
        for (const auto& b : basis) {
            double x = static_cast<double>(num(rng)) / den(rng);
            for (int i = 0; i < q; ++i)
                for (int j = 0; j < q; ++j)
                    M(i, j) += x * b.entry_complex(i, j);
        }
        if (std::abs(M.determinant()) > 1e-8) return false;
    }
    return true;
}

std::optional<CoeffMatrix> find_invertible(const std::vector<CoeffMatrix>& basis, int q,
                                           std::uint64_t seed) {
    std::mt19937_64 rng(seed + 1);
    std::uniform_int_distribution<int> num(-3, 3);
    // deterministic first guesses, then seeded ones
    for (int trial = 0; trial < 64; ++trial) {
        CoeffMatrix cand(q);
        for (size_t v = 0; v < basis.size(); ++v) {
            int x = trial == 0 ? 1
                  : trial == 1 ? static_cast<int>(v) + 1
                               : num(rng);
            if (x == 0) continue;
            cand = cand + basis[v].scale(Coeff(x));
        }
        if (q <= 6) {
            if (!cand.det().is_zero()) return cand;
        } else {
            Eigen::MatrixXcd M(q, q);
            for (int i = 0; i < q; ++i)
                for (int j = 0; j < q; ++j) M(i, j) = cand.entry_complex(i, j);
            if (std::abs(M.determinant()) > 1e-8) return cand;
        }
    }
    return std::nullopt;
}

std::vector<std::vector<std::complex<double>>> polar_unitary_of(const CoeffMatrix& c) {
    const int q = c.dim();
    Eigen::MatrixXcd M(q, q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) M(i, j) = c.entry_complex(i, j);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::MatrixXcd U = svd.matrixU() * svd.matrixV().adjoint();
    std::vector<std::vector<std::complex<double>>> out(q, std::vector<std::complex<double>>(q));
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) out[i][j] = U(i, j);
    return out;
}

} // namespace

std::vector<EigenspaceReport> regularity_check(const FinDimCovering& cov, std::uint64_t seed) {
    cov.validate();
    const int q = cov.q;
    const long n = cov.group_order();
    const int t = static_cast<int>(cov.cyclic_orders.size());

    // enumerate group elements as exponent tuples, with their unitaries
    std::vector<std::vector<int>> elements;
    {
        std::vector<int> g(t, 0);
        for (;;) {
            elements.push_back(g);
            int i = 0;
            while (i < t && ++g[i] == cov.cyclic_orders[i]) g[i++] = 0;
            if (i == t) break;
        }
        if (t == 0) elements.assign(1, {});
    }
    std::vector<CoeffMatrix> u_of(elements.size(), CoeffMatrix::identity(q));
    for (size_t e = 0; e < elements.size(); ++e)
        for (int i = 0; i < t; ++i)
            for (int rep = 0; rep < elements[e][i]; ++rep)
                u_of[e] = u_of[e] * cov.gens[i];
    std::vector<CoeffMatrix> u_inv(elements.size(), CoeffMatrix::identity(q));
    for (size_t e = 0; e < elements.size(); ++e)
        u_inv[e] = u_of[e].adjoint();  // monomial unitaries: inverse = adjoint

    std::vector<EigenspaceReport> reports;
    std::vector<int> k(t, 0);
    for (long ci = 0; ci < n; ++ci) {
        EigenspaceReport rep;
        rep.character = k;

        // E_k(e_ab) over all matrix units; keep one representative per support
        std::vector<CoeffMatrix> basis;
        std::vector<std::vector<int>> supports;
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) {
                CoeffMatrix acc(q);
                for (size_t e = 0; e < elements.size(); ++e) {
                    Rat chi = 0;
                    for (int i = 0; i < t; ++i)
                        chi += Rat(k[i] * elements[e][i]) / Rat(cov.cyclic_orders[i]);
                    CoeffMatrix unit(q);
                    unit.at(a, b) = Coeff(1);
                    CoeffMatrix moved = u_of[e] * unit * u_inv[e];
                    acc = acc + moved.scale(Coeff::unit(-Phase(chi), Rat(1) / Rat(n)));
                }
                if (acc.is_zero()) continue;
                std::vector<int> supp;
                for (int i = 0; i < q; ++i)
                    for (int j = 0; j < q; ++j)
                        if (!acc.at(i, j).is_zero()) supp.push_back(i * q + j);
                if (std::find(supports.begin(), supports.end(), supp) == supports.end()) {
                    supports.push_back(supp);
                    basis.push_back(acc);
                }
            }
        rep.basis = basis;

        if (!basis.empty()) {
            bool zero = q <= 4 ? det_identically_zero_symbolic(basis, q)
                               : det_identically_zero_schwartz(basis, q, seed);
            if (!zero) {
                auto sample = find_invertible(basis, q, seed);
                if (sample) {
                    rep.has_invertible = true;
                    rep.invertible_sample = *sample;
                    rep.polar_unitary = polar_unitary_of(*sample);
                }
            }
        }
        reports.push_back(std::move(rep));

        int i = 0;
        while (i < t && ++k[i] == cov.cyclic_orders[i]) k[i++] = 0;
        if (t == 0) break;
    }
    return reports;
}

std::vector<TrigPoly> regularity_lattice(const Tower& tw, int level) {
    std::vector<TrigPoly> out;
    for (int k = 0; k < tw.r(); ++k) {
        TrigPoly s = sigma_unitary(tw, level, k);
        // unitary by construction: single term, unit coefficient
        if (!(s * s.adjoint() == TrigPoly::constant(level, tw.p(), Coeff(1))))
            throw InvariantViolation("sigma is not unitary");
        if (!(eigenspace_project(tw, level, k, s) == s))
            throw InvariantViolation("sigma not in its eigenspace");
        out.push_back(s);
    }
    return out;
}

} // namespace solenoid::covalg
