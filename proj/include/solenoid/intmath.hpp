#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/math/constants/constants.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace solenoid {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using Real = boost::multiprecision::cpp_bin_float_50;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// Thrown when a stated invariant of the construction fails (CLI exit code 2).
struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Thrown on bad input or unmet precondition (CLI exit code 3).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int rat_floor(const Rat& x) {
    return floor_div(numerator(x), denominator(x));
}

inline Int rat_ceil(const Rat& x) { return -rat_floor(-x); }

// fractional part in [0,1)
inline Rat rat_frac(const Rat& x) { return x - Rat(rat_floor(x)); }

inline bool is_integer(const Rat& x) { return denominator(x) == 1; }

inline double to_double(const Rat& x) {
    return static_cast<double>(Real(numerator(x)) / Real(denominator(x)));
}

inline Real to_real(const Rat& x) {
    return Real(numerator(x)) / Real(denominator(x));
}

inline Real pi_real() { return boost::math::constants::pi<Real>(); }

// Smallest rational of the form k/2^60 that is >= sqrt(x); x >= 0.
inline Rat sqrt_upper(const Rat& x) {
    if (x < 0) throw PreconditionError("sqrt of negative rational");
    if (x == 0) return Rat(0);
    const int bits = 32;
    Int scale = Int(1) << bits;
    Int num = numerator(x) * scale * scale;
    Int den = denominator(x);
    Int q = num / den + 1;           // ceil of scaled value
    Int root = sqrt(q);              // floor sqrt
    if (root * root < q) ++root;
    return Rat(root) / Rat(scale);
}

inline std::string rat_to_string(const Rat& x) {
    std::string s = numerator(x).str();
    if (denominator(x) != 1) s += "/" + denominator(x).str();
    return s;
}

// Accepts "3", "-5/7" and decimal forms like "2.5", "-0.125".
inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw PreconditionError("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw PreconditionError("zero denominator in '" + s + "'");
        return Rat(num) / Rat(den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rat(Int(s));
    std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
    if (head.empty() || head == "-" || head == "+") head += "0";
    for (char c : tail)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw PreconditionError("bad rational literal '" + s + "'");
    Int den = 1;
    for (size_t i = 0; i < tail.size(); ++i) den *= 10;
    Int num = Int(head) * den;
    Int frac_part = tail.empty() ? Int(0) : Int(tail);
    if (!head.empty() && head[0] == '-') num -= frac_part; else num += frac_part;
    return Rat(num) / Rat(den);
}

inline Rat dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw PreconditionError("dimension mismatch in dot");
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rat norm_sq(const RatVec& a) { return dot(a, a); }

inline RatVec vec_add(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline RatVec vec_sub(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline RatVec vec_neg(const RatVec& a) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline bool vec_is_zero(const RatVec& a) {
    for (const auto& x : a) if (x != 0) return false;
    return true;
}

inline std::string vec_to_string(const RatVec& a) {
    std::string s = "(";
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += rat_to_string(a[i]);
    }
    return s + ")";
}

} // namespace solenoid
