#include "solenoid/dirac.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace solenoid::dirac {

using lattice::Phase;

CliffordGens clifford_generators(int count) {
    if (count < 1) throw PreconditionError("need at least one generator");
    // full odd sets {e_1..e_{2j+1}} of size 2^j, extended two at a time:
    // {e_i (x) sx} + {I (x) sy, I (x) sz}
    CoeffMatrix sx(2), sy(2), sz(2);
    sx.at(0, 1) = Coeff(1); sx.at(1, 0) = Coeff(1);
    sy.at(0, 1) = -Coeff::i(); sy.at(1, 0) = Coeff::i();
    sz.at(0, 0) = Coeff(1); sz.at(1, 1) = Coeff(-1);

    std::vector<CoeffMatrix> odd{CoeffMatrix::identity(1)};  // count = 1: {[1]}
    int have = 1;
    auto kron = [](const CoeffMatrix& a, const CoeffMatrix& b) {
        CoeffMatrix r(a.dim() * b.dim());
        for (int i = 0; i < a.dim(); ++i)
            for (int j = 0; j < a.dim(); ++j) {
                if (a.at(i, j).is_zero()) continue;
                for (int k = 0; k < b.dim(); ++k)
                    for (int l = 0; l < b.dim(); ++l)
                        if (!b.at(k, l).is_zero())
                            r.at(i * b.dim() + k, j * b.dim() + l) =
                                a.at(i, j) * b.at(k, l);
            }
        return r;
    };
    while (have < count) {
        std::vector<CoeffMatrix> next;
        CoeffMatrix id = CoeffMatrix::identity(odd[0].dim());
        for (const auto& e : odd) next.push_back(kron(e, sx));
        next.push_back(kron(id, sy));
        next.push_back(kron(id, sz));
        odd = std::move(next);
        have += 2;
    }
    CliffordGens g;
    g.count = count;
    g.eps.assign(odd.begin(), odd.begin() + count);
    g.dim = g.eps[0].dim();
    return g;
}

double Cutoff::lambda_value() const {
    if (kind == Kind::Lambda) return to_double(bound);
    return static_cast<double>(2 * pi_real() * to_real(bound));
}

Rat Cutoff::enumeration_radius() const {
    if (kind == Kind::FreqRadius) return bound;
    // rational upper bound of Lambda / 2 pi with a small guard
    Real rho = to_real(bound) / (2 * pi_real());
    Rat up = Rat(static_cast<long long>(std::ceil(static_cast<double>(rho * 1024))) + 1) /
             Rat(1024);
    return up;
}

bool Cutoff::accepts_norm_sq(const Rat& norm_sq) const {
    if (kind == Kind::FreqRadius) return norm_sq <= bound * bound;
    // 4 pi^2 norm_sq <= Lambda^2 at 50 digits; ties cannot occur for
    // rational Lambda since pi^2 is irrational
    Real lhs = 4 * pi_real() * pi_real() * to_real(norm_sq);
    Real rhs = to_real(bound) * to_real(bound);
    return lhs <= rhs;
}

Rat SpectrumMultiset::total_weight() const {
    Rat s = 0;
    for (const auto& l : lines) s += Rat(l.multiplicity) * l.weight;
    return s;
}

long long SpectrumMultiset::total_multiplicity() const {
    long long s = 0;
    for (const auto& l : lines) s += l.multiplicity;
    return s;
}

namespace {

int spinor_dim(int p) { return p == 1 ? 1 : (1 << (p / 2)); }

SpectrumMultiset lines_from_normsq_counts(const std::map<Rat, long long>& counts,
                                          const Rat& weight, const std::string& model,
                                          double cutoff) {
    SpectrumMultiset s;
    s.model = model;
    s.cutoff = cutoff;
    for (const auto& [n2, mult] : counts) {
        SpectralLine l;
        l.norm_sq = n2;
        l.value = 2.0 * M_PI * std::sqrt(to_double(n2));
        l.signed_pair = n2 > 0;
        l.multiplicity = mult;
        l.weight = weight;
        s.lines.push_back(std::move(l));
    }
    return s;
}

} // namespace

SpectrumMultiset torus_spectrum(const Tower& tw, int level, const Cutoff& cut) {
    const int dim = spinor_dim(tw.p());
    auto pts = lattice::enumerate_ball(tw, level, cut.enumeration_radius());
    std::map<Rat, long long> counts;
    for (const auto& pt : pts)
        if (cut.accepts_norm_sq(pt.norm_sq)) counts[pt.norm_sq] += dim;
    Rat w = Rat(1);
    for (int i = 0; i < level; ++i) w /= Rat(tw.group().order);
    return lines_from_normsq_counts(counts, w, "torus", cut.lambda_value());
}

namespace {
Rat max_section_sum_sq(const Tower& tw, int level);
}

SpectrumMultiset assembled_cover_spectrum(const Tower& tw, int level, const Cutoff& cut) {
    const int p = tw.p();
    const int r = tw.r();
    const int dim = spinor_dim(p);
    double tuples = std::pow(static_cast<double>(r), level);
    if (tuples > 5e6) throw PreconditionError("assembled spectrum: too many class tuples");

    // enumerate mode tuples (m, k_1..k_n) directly: the D-hat_n formula
    // gives the eigenvalue pair +-2 pi ||m - sum_h s_h(k_h)||, and every
    // contributing m satisfies ||m|| <= R + max ||sum_h s_h||
    Rat m_radius = cut.enumeration_radius() + sqrt_upper(max_section_sum_sq(tw, level));
    std::vector<Int> bound(p, rat_ceil(m_radius));
    std::vector<std::vector<int>> class_tuples;
    {
        std::vector<int> ks(level, 0);
        for (;;) {
            class_tuples.push_back(ks);
            int i = 0;
            while (i < level && ++ks[i] == r) ks[i++] = 0;
            if (i == level) break;
            if (level == 0) break;
        }
        if (level == 0) class_tuples.assign(1, {});
    }
    std::vector<RatVec> section_sums;
    section_sums.reserve(class_tuples.size());
    for (const auto& ks : class_tuples) {
        RatVec sum(p, Rat(0));
        for (int h = 1; h <= level; ++h) sum = vec_add(sum, tw.section(h, ks[h - 1]));
        section_sums.push_back(sum);
    }

    std::map<Rat, long long> counts;
    IntVec m(p);
    std::function<void(int)> rec = [&](int i) {
        if (i == p) {
            RatVec mv(m.begin(), m.end());
            for (const auto& sum : section_sums) {
                Rat n2 = norm_sq(vec_sub(mv, sum));
                if (cut.accepts_norm_sq(n2)) counts[n2] += dim;
            }
            return;
        }
        for (Int v = -bound[i]; v <= bound[i]; ++v) { m[i] = v; rec(i + 1); }
    };
    rec(0);

    Rat w = Rat(1);
    for (int i = 0; i < level; ++i) w /= Rat(tw.group().order);
    SpectrumMultiset got =
        lines_from_normsq_counts(counts, w, "assembled_cover", cut.lambda_value());

    SpectrumMultiset want = torus_spectrum(tw, level, cut);
    std::string diff;
    if (!spectra_equal_exact(got, want, &diff))
        throw InvariantViolation("assembled spectrum differs from torus spectrum: " + diff);
    return got;
}

bool spectra_equal_exact(const SpectrumMultiset& a, const SpectrumMultiset& b,
                         std::string* first_diff) {
    if (a.lines.size() != b.lines.size()) {
        if (first_diff)
            *first_diff = "line counts " + std::to_string(a.lines.size()) + " vs " +
                          std::to_string(b.lines.size());
        return false;
    }
    for (size_t i = 0; i < a.lines.size(); ++i) {
        const auto& x = a.lines[i];
        const auto& y = b.lines[i];
        bool same;
        if (x.norm_sq && y.norm_sq)
            same = *x.norm_sq == *y.norm_sq && x.multiplicity == y.multiplicity &&
                   x.weight == y.weight;
        else
            same = x.value == y.value && x.multiplicity == y.multiplicity &&
                   x.weight == y.weight;
        if (!same) {
            if (first_diff) {
                *first_diff = "line " + std::to_string(i) + ": value " +
                              std::to_string(x.value) + " mult " +
                              std::to_string(x.multiplicity) + " vs value " +
                              std::to_string(y.value) + " mult " +
                              std::to_string(y.multiplicity);
            }
            return false;
        }
    }
    return true;
}

namespace {

// exact convex hull (Andrew monotone chain) for p = 2
std::vector<RatVec> hull2(std::vector<RatVec> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const size_t n = pts.size();
    if (n <= 2) return pts;
    auto cross = [](const RatVec& o, const RatVec& a, const RatVec& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<RatVec> h(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (size_t i = n - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

Rat max_section_sum_sq(const Tower& tw, int level) {
    const int p = tw.p();
    const int r = tw.r();
    if (level == 0) return Rat(0);
    if (p == 1) {
        Rat lo = 0, hi = 0;
        for (int h = 1; h <= level; ++h) {
            Rat mn = tw.section(h, 0)[0], mx = mn;
            for (int k = 1; k < r; ++k) {
                Rat v = tw.section(h, k)[0];
                mn = std::min(mn, v);
                mx = std::max(mx, v);
            }
            lo += mn;
            hi += mx;
        }
        return std::max(lo * lo, hi * hi);
    }
    if (p == 2) {
        std::vector<RatVec> hull{RatVec(2, Rat(0))};
        for (int h = 1; h <= level; ++h) {
            std::vector<RatVec> sums;
            for (const auto& x : hull)
                for (int k = 0; k < r; ++k) sums.push_back(vec_add(x, tw.section(h, k)));
            hull = hull2(std::move(sums));
        }
        Rat best = 0;
        for (const auto& x : hull) best = std::max(best, norm_sq(x));
        return best;
    }
    // brute force with a size guard
    double tuples = std::pow(static_cast<double>(r), level);
    if (tuples > 2e6)
        throw PreconditionError("section-sum maximum too large to enumerate for p > 2");
    Rat best = 0;
    std::vector<int> ks(level, 0);
    for (;;) {
        RatVec v(p, Rat(0));
        for (int h = 1; h <= level; ++h) v = vec_add(v, tw.section(h, ks[h - 1]));
        best = std::max(best, norm_sq(v));
        int i = 0;
        while (i < level && ++ks[i] == r) ks[i++] = 0;
        if (i == level) break;
    }
    return best;
}

} // namespace

CnNorm cn_norm(const Tower& tw, int level) {
    if (level < 1) throw PreconditionError("cn_norm needs level >= 1");
    CnNorm c;
    c.max_norm_sq = max_section_sum_sq(tw, level);
    c.exact = 2 * pi_real() * sqrt(to_real(c.max_norm_sq));
    Real bound = 0;
    for (int h = 1; h <= level; ++h)
        bound += sqrt(to_real(tw.A_pow(h - 1).frobenius_sq()));
    c.paper_bound = 2 * pi_real() * sqrt(Real(tw.p())) * bound;
    if (c.exact > c.paper_bound)
        throw InvariantViolation("C_n norm exceeded its bound");
    return c;
}

std::vector<CnNorm> cn_norm_sequence(const Tower& tw, int max_level) {
    std::vector<CnNorm> out;
    for (int n = 1; n <= max_level; ++n) out.push_back(cn_norm(tw, n));
    return out;
}

BaseSpectrum base_point() { return {BaseLine{0.0, 1}}; }

BaseSpectrum base_circle(double lambda_max) {
    BaseSpectrum b{{0.0, 1}};
    for (int k = 1; 2 * M_PI * k <= lambda_max; ++k) b.push_back({2 * M_PI * k, 2});
    return b;
}

SpectrumMultiset crossed_spectrum(const BaseSpectrum& base, const Tower& tw,
                                  int level, const Rat& lambda_cut) {
    const int p = tw.p();
    const int mult_factor = 1 << ((p + 1) / 2);  // 2^ceil(p/2)
    const double lambda = to_double(lambda_cut);

    Rat w = Rat(1);
    for (int i = 0; i < level; ++i) w /= Rat(tw.group().order);

    std::vector<std::pair<double, long long>> vals;
    for (const auto& bl : base) {
        double rem_sq = lambda * lambda - bl.value * bl.value;
        if (rem_sq < 0) continue;
        Rat radius = Rat(static_cast<long long>(std::ceil(std::sqrt(rem_sq) * 1024)) + 1) /
                     Rat(1024);
        for (const auto& pt : lattice::enumerate_ball(tw, level, radius)) {
            double v2 = bl.value * bl.value + to_double(pt.norm_sq);
            if (v2 > lambda * lambda) continue;
            vals.push_back({std::sqrt(v2), bl.multiplicity * mult_factor});
        }
    }
    std::sort(vals.begin(), vals.end());
    SpectrumMultiset s;
    s.model = "crossed";
    s.cutoff = lambda;
    for (const auto& [v, m] : vals) {
        if (!s.lines.empty() && std::abs(s.lines.back().value - v) <=
                                    1e-9 * std::max(1.0, std::abs(v)))
            s.lines.back().multiplicity += m;
        else {
            SpectralLine l;
            l.value = v;
            l.signed_pair = v > 0;
            l.multiplicity = m;
            l.weight = w;
            s.lines.push_back(l);
        }
    }
    return s;
}

Rat uhf_weight(int r, int k) {
    Rat r2 = Rat(r) * Rat(r);
    Rat scale = 1 - 1 / r2;
    Rat pw = 1;
    int e = 2 * (k + 1);
    for (int i = 0; i < std::abs(e); ++i) pw *= Rat(r);
    if (e < 0) pw = 1 / pw;
    return scale * pw;
}

SpectrumMultiset uhf_spectrum(const UhfParams& u, int k_max) {
    if (u.r < 2) throw PreconditionError("UHF needs r >= 2");
    if (u.s <= 0) throw PreconditionError("UHF Dirac needs s > 0");
    SpectrumMultiset spec;
    spec.model = "uhf";
    const double s = to_double(u.s);
    // null line: the P_{-n-1} range
    {
        SpectralLine l;
        l.value = 0;
        l.multiplicity = 1;
        Rat w = 1;
        for (int i = 0; i < 2 * u.level; ++i) w /= Rat(u.r);
        l.weight = w;
        spec.lines.push_back(l);
    }
    for (int k = -u.level; k <= k_max; ++k) {
        SpectralLine l;
        l.value = std::pow(static_cast<double>(u.r), s * k);
        l.multiplicity = 1;
        l.weight = uhf_weight(u.r, k);
        spec.lines.push_back(l);
    }
    std::sort(spec.lines.begin(), spec.lines.end(),
              [](const SpectralLine& a, const SpectralLine& b) { return a.value < b.value; });
    spec.cutoff = spec.lines.back().value;
    return spec;
}

TorusLip torus_lipnorm(const RatVec& xi) {
    TorusLip t;
    t.norm_sq = norm_sq(xi);
    t.value = 2.0 * M_PI * std::sqrt(to_double(t.norm_sq));
    return t;
}

double crossed_lipnorm(const RatVec& g) { return std::sqrt(to_double(norm_sq(g))); }

namespace {

using CMat = Eigen::MatrixXcd;

// matrix of the operator xi -> Tr(xi) b - Tr(b xi) I on L^2(M_r, tr_n),
// in the orthonormal basis sqrt(r) e_{ij}
CMat commutator_block(const CMat& b) {
    const int r = static_cast<int>(b.rows());
    CMat K = CMat::Zero(r * r, r * r);
    auto idx = [r](int i, int j) { return i * r + j; };
    for (int k = 0; k < r; ++k)
        for (int l = 0; l < r; ++l) {
            // image of f_kl = sqrt(r) e_kl: Tr_n(e_kl) b - Tr_n(b e_kl) I, scaled
            CMat e = CMat::Zero(r, r);
            e(k, l) = std::sqrt(static_cast<double>(r));
            std::complex<double> tr_e = e.trace() / static_cast<double>(r);
            std::complex<double> tr_be = (b * e).trace() / static_cast<double>(r);
            CMat img = tr_e * b - tr_be * CMat::Identity(r, r);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j)
                    K(idx(i, j), idx(k, l)) = img(i, j) / std::sqrt(static_cast<double>(r));
        }
    return K;
}

} // namespace

UhfCommutator uhf_commutator(const UhfParams& u,
                             const std::vector<std::vector<std::complex<double>>>& bm) {
    const int r = u.r;
    if (static_cast<int>(bm.size()) != r)
        throw PreconditionError("b must be an r x r matrix");
    CMat b(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) b(i, j) = bm[i][j];

    const double s = to_double(u.s);
    const double scale = std::pow(static_cast<double>(r), -s * u.level);

    UhfCommutator out;
    // [D_n, x_n] = r^{-ns} [Q_{-n}, x_n]; the only surviving block is
    // xi -> Tr(xi) b - Tr(b xi) I on the slot carrying b
    CMat K = commutator_block(b);
    Eigen::JacobiSVD<CMat> svd(K);
    out.exact = scale * svd.singularValues()(0);

    // lower: the composite [F, L_b] L_{b*}, xi -> Tr(b* xi) b - Tr(b b* xi) I,
    // divided by the operator norm of b
    CMat K2 = CMat::Zero(r * r, r * r);
    auto idx = [r](int i, int j) { return i * r + j; };
    for (int k = 0; k < r; ++k)
        for (int l = 0; l < r; ++l) {
            CMat e = CMat::Zero(r, r);
            e(k, l) = std::sqrt(static_cast<double>(r));
            std::complex<double> tr1 = (b.adjoint() * e).trace() / static_cast<double>(r);
            std::complex<double> tr2 = (b * b.adjoint() * e).trace() / static_cast<double>(r);
            CMat img = tr1 * b - tr2 * CMat::Identity(r, r);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j)
                    K2(idx(i, j), idx(k, l)) = img(i, j) / std::sqrt(static_cast<double>(r));
        }
    Eigen::JacobiSVD<CMat> svd_b(b);
    double b_op = svd_b.singularValues()(0);
    Eigen::JacobiSVD<CMat> svd2(K2);
    out.lower = scale * svd2.singularValues()(0) / b_op;

    double rs = std::pow(static_cast<double>(r), -s);
    out.upper = 2.0 * b_op * scale / (1.0 - rs);
    return out;
}

double crossed_commutator_explicit(const Tower& tw, int level, const RatVec& g,
                                   int window) {
    const int p = tw.p();
    CliffordGens cg = clifford_generators(p + 1);
    // ell(v) = sum_mu v_mu eps_{mu+1}
    auto ell = [&](const RatVec& v) {
        CoeffMatrix m(cg.dim);
        for (int mu = 0; mu < p; ++mu)
            m = m + cg.eps[mu + 1].scale(Coeff(v[mu]));
        return m;
    };
    // blocks of [M_ell, U_g] at interior lattice points: ell(m) - ell(m-g)
    CoeffMatrix expected = ell(g);
    auto pts = lattice::enumerate_ball(tw, level, Rat(window));
    int interior = 0;
    for (const auto& pt : pts) {
        RatVec shifted = vec_sub(pt.xi, g);
        if (norm_sq(shifted) > Rat(window * window)) continue;  // boundary
        ++interior;
        CoeffMatrix block = ell(pt.xi) - ell(shifted);
        if (!(block - expected).is_zero())
            throw InvariantViolation("crossed commutator block mismatch");
    }
    if (interior == 0) throw PreconditionError("window too small for the shift");
    // Clifford identity: ||ell(g)||^2 = ||g||^2 exactly
    CoeffMatrix sq = expected * expected;
    Rat n2 = norm_sq(g);
    for (int i = 0; i < cg.dim; ++i)
        for (int j = 0; j < cg.dim; ++j) {
            Coeff want = i == j ? Coeff(n2) : Coeff();
            if (!(sq.at(i, j) - want).is_zero())
                throw InvariantViolation("length square is not ||g||^2 I");
        }
    return std::sqrt(to_double(n2));
}

RadiiTable radii_divergence_torus(const Tower& tw, int k_max, bool two_pi) {
    RadiiTable t;
    t.model = two_pi ? RadiiModel::Torus : RadiiModel::Crossed;
    t.purely_expanding = intlat::purely_expanding(tw.B()).purely_expanding;
    const double factor = two_pi ? 2.0 * M_PI : 1.0;
    for (int k = 0; k <= k_max; ++k) {
        RatVec e1(tw.p(), Rat(0));
        e1[0] = 1;
        RatVec xi = tw.A_pow(k) * e1;
        double lip = factor * std::sqrt(to_double(norm_sq(xi)));
        // the quotient norm of the monomial x_k is exactly 1
        t.rows.push_back({k, lip, 1.0 / lip});
    }
    return t;
}

RadiiTable radii_divergence_crossed(const Tower& tw, int k_max) {
    return radii_divergence_torus(tw, k_max, /*two_pi=*/false);
}

RadiiTable radii_divergence_nctorus(const Tower& tw, const nctorus::RationalAngle& th,
                                    int k_max) {
    // the center of the rational rotation algebra is the torus algebra;
    // the witness sequence is the same frequency monomial
    (void)th;
    RadiiTable t = radii_divergence_torus(tw, k_max, /*two_pi=*/true);
    t.model = RadiiModel::NCTorus;
    return t;
}

RadiiTable radii_divergence_uhf(const UhfParams& u,
                                const std::vector<std::vector<std::complex<double>>>& b,
                                int k_max) {
    RadiiTable t;
    t.model = RadiiModel::Uhf;
    // distance of b to the scalars, by refining grid search on lambda
    const int r = u.r;
    CMat bm(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) bm(i, j) = b[i][j];
    auto dist_at = [&](std::complex<double> l) {
        Eigen::JacobiSVD<CMat> svd(bm - l * CMat::Identity(r, r));
        return svd.singularValues()(0);
    };
    Eigen::JacobiSVD<CMat> svd(bm);
    double radius = svd.singularValues()(0);
    std::complex<double> center = 0;
    double best = dist_at(center);
    double step = radius;
    for (int round = 0; round < 24; ++round) {
        std::complex<double> improved = center;
        for (int a = -2; a <= 2; ++a)
            for (int c = -2; c <= 2; ++c) {
                std::complex<double> cand = center + std::complex<double>(a * step, c * step);
                double d = dist_at(cand);
                if (d < best) { best = d; improved = cand; }
            }
        center = improved;
        step /= 2;
    }
    const double dist = best;

    for (int k = 0; k <= k_max; ++k) {
        UhfParams uk = u;
        uk.level = k;
        UhfCommutator c = uhf_commutator(uk, b);
        t.rows.push_back({k, c.exact, dist / c.exact});
    }
    return t;
}

LipScaling lip_scaling_check(const nctorus::RationalAngle& th, const IntVec& m, int n) {
    nctorus::NCPoly x0 = nctorus::level_image(th, 0, m);
    nctorus::NCPoly xn = nctorus::level_image(th, n, m);
    LipScaling out;
    out.lhs_sq = norm_sq(xn.terms().begin()->first);
    Rat four_pow = 1;
    for (int i = 0; i < n; ++i) four_pow *= 4;
    out.rhs_sq = norm_sq(x0.terms().begin()->first) / four_pow;
    if (vec_is_zero(x0.terms().begin()->first)) {
        out.lhs_sq = 0;
        out.rhs_sq = 0;
    }
    out.holds = out.lhs_sq == out.rhs_sq;
    return out;
}

} // namespace solenoid::dirac
