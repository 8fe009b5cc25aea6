#include "solenoid/coeff.hpp"

#include <algorithm>
#include <map>

namespace solenoid::coeff {

Coeff Coeff::unit(const Phase& ph, const Rat& mag) {
    Coeff c;
    c.push(ph, mag);
    return c;
}

Coeff Coeff::from_complex(double re, double im) {
    // doubles are dyadic rationals, so this embedding is exact
    Coeff c;
    if (re != 0) c.push(Phase(), Rat(re));
    if (im != 0) c.push(Phase(Rat(1) / 4), Rat(im));
    return c;
}

Coeff Coeff::i() { return unit(Phase(Rat(1) / 4)); }

void Coeff::push(const Phase& ph, const Rat& mag) {
    if (mag == 0) return;
    Phase p = ph;
    Rat m = mag;
    if (p.value() >= Rat(1) / 2) {
        p = p - Phase(Rat(1) / 2);
        m = -m;
    }
    auto it = std::lower_bound(terms_.begin(), terms_.end(), p,
                               [](const Term& t, const Phase& x) { return t.phase < x; });
    if (it != terms_.end() && it->phase == p) {
        it->mag += m;
        if (it->mag == 0) terms_.erase(it);
    } else {
        terms_.insert(it, Term{p, m});
    }
}

Coeff Coeff::operator+(const Coeff& o) const {
    Coeff r = *this;
    for (const auto& t : o.terms_) r.push(t.phase, t.mag);
    return r;
}

Coeff Coeff::operator-(const Coeff& o) const {
    Coeff r = *this;
    for (const auto& t : o.terms_) r.push(t.phase, -t.mag);
    return r;
}

Coeff Coeff::operator-() const {
    Coeff r;
    for (const auto& t : terms_) r.push(t.phase, -t.mag);
    return r;
}

Coeff Coeff::operator*(const Coeff& o) const {
    Coeff r;
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) r.push(a.phase + b.phase, a.mag * b.mag);
    return r;
}

Coeff Coeff::conj() const {
    Coeff r;
    for (const auto& t : terms_) r.push(-t.phase, t.mag);
    return r;
}

std::vector<Int> cyclotomic(int n) {
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, exact division in Z[x]
    std::vector<Int> num(n + 1, Int(0));
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        std::vector<Int> phi_d = cyclotomic(d);
        // divide num by phi_d (monic)
        std::vector<Int> q(num.size() - phi_d.size() + 1, Int(0));
        std::vector<Int> rem = num;
        for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
            Int c = rem[i + phi_d.size() - 1];
            q[i] = c;
            if (c == 0) continue;
            for (size_t j = 0; j < phi_d.size(); ++j)
                rem[i + j] -= c * phi_d[j];
        }
        for (const auto& x : rem)
            if (x != 0) throw InvariantViolation("cyclotomic division not exact");
        num = std::move(q);
    }
    return num;
}

bool Coeff::is_zero() const {
    if (terms_.empty()) return true;
    // common denominator of the phase lattice; fold to 2N to account for
    // the implicit half-turn signs
    Int nn = 1;
    for (const auto& t : terms_) nn = lcm(nn, denominator(t.phase.value()));
    nn = lcm(nn, Int(2));
    if (nn > 512) throw PreconditionError("phase denominator too large for exact zero test");
    const int N = static_cast<int>(nn);

    // polynomial in x = e^{2 pi i / N} over Q
    std::vector<Rat> poly(N, Rat(0));
    for (const auto& t : terms_) {
        Rat e = t.phase.value() * N;
        poly[static_cast<int>(numerator(e))] += t.mag;
    }
    // reduce modulo Phi_N (monic, integer)
    std::vector<Int> phi = cyclotomic(N);
    const int d = static_cast<int>(phi.size()) - 1;
    for (int i = N - 1; i >= d; --i) {
        Rat c = poly[i];
        if (c == 0) continue;
        for (int j = 0; j <= d; ++j) poly[i - d + j] -= c * Rat(phi[j]);
    }
    for (int i = 0; i < d; ++i)
        if (poly[i] != 0) return false;
    return true;
}

std::optional<Rat> Coeff::as_rational() const {
    if (terms_.empty()) return Rat(0);
    if (terms_.size() == 1 && terms_[0].phase.is_zero()) return terms_[0].mag;
    // a multi-term sum can still be rational (e.g. cyclotomic traces);
    // detect by subtracting the candidate value obtained numerically
    std::complex<double> z = to_complex();
    if (std::abs(z.imag()) > 1e-9) return std::nullopt;
    return std::nullopt;  // conservatively: only canonical rationals
}

std::complex<double> Coeff::to_complex() const {
    std::complex<double> z = 0;
    for (const auto& t : terms_) z += to_double(t.mag) * t.phase.to_complex();
    return z;
}

std::string Coeff::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (i) s += " + ";
        s += rat_to_string(terms_[i].mag);
        if (!terms_[i].phase.is_zero())
            s += "*e(" + rat_to_string(terms_[i].phase.value()) + ")";
    }
    return s;
}

} // namespace solenoid::coeff
