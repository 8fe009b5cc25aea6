#pragma once

#include "solenoid/lattice.hpp"

#include <complex>
#include <vector>

namespace solenoid::coeff {

using lattice::Phase;

// A complex coefficient kept as a finite Q-linear combination of unit
// phases, sum_i c_i e^{2 pi i q_i}. Phases are folded into [0, 1/2) with
// signed coefficients (e^{2 pi i (q+1/2)} = -e^{2 pi i q}), which makes
// the representation canonical term-by-term; residual cyclotomic
// cancellations (1 + w + w^2 = 0 and friends) are caught by is_zero().
class Coeff {
public:
    Coeff() = default;
    Coeff(int v) { if (v != 0) terms_.push_back({Phase(), Rat(v)}); }  // NOLINT
    explicit Coeff(const Rat& v) { if (v != 0) terms_.push_back({Phase(), v}); }
    static Coeff unit(const Phase& ph, const Rat& mag = Rat(1));
    static Coeff from_complex(double re, double im);
    static Coeff i();  // the imaginary unit, e^{2 pi i / 4}

    Coeff operator+(const Coeff& o) const;
    Coeff operator-(const Coeff& o) const;
    Coeff operator-() const;
    Coeff operator*(const Coeff& o) const;
    Coeff& operator+=(const Coeff& o) { return *this = *this + o; }
    Coeff& operator*=(const Coeff& o) { return *this = *this * o; }

    Coeff conj() const;
    Coeff abs_sq() const { return *this * conj(); }

    // exact: reduces the formal sum modulo the cyclotomic polynomial of the
    // common phase denominator
    bool is_zero() const;
    bool operator==(const Coeff& o) const { return (*this - o).is_zero(); }

    // exact rational value, if the coefficient is a rational real number
    std::optional<Rat> as_rational() const;

    bool is_single_phase() const { return terms_.size() <= 1; }
    size_t term_count() const { return terms_.size(); }
    std::complex<double> to_complex() const;
    std::string to_string() const;

    struct Term { Phase phase; Rat mag; };
    const std::vector<Term>& terms() const { return terms_; }

private:
    void push(const Phase& ph, const Rat& mag);  // folds and merges
    std::vector<Term> terms_;  // sorted by phase, phases in [0,1/2), mags != 0
};

inline Coeff operator*(const Rat& s, const Coeff& c) { return Coeff(s) * c; }

// Cyclotomic polynomial Phi_n, ascending integer coefficients.
std::vector<Int> cyclotomic(int n);

} // namespace solenoid::coeff
