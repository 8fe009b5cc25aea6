#pragma once

#include "solenoid/covalg.hpp"
#include "solenoid/nctorus.hpp"

namespace solenoid::dirac {

using covalg::Coeff;
using covalg::CoeffMatrix;
using lattice::Tower;

// Hermitian anticommuting generators with entries in {0, +-1, +-i},
// size 2^floor(count/2), built from Pauli tensors.
struct CliffordGens {
    int count = 0;
    int dim = 0;
    std::vector<CoeffMatrix> eps;
};
CliffordGens clifford_generators(int count);

// Truncation threshold: either an eigenvalue bound |D|-value <= Lambda, or
// an exact frequency radius ||xi|| <= rho (Lambda = 2 pi rho).
struct Cutoff {
    enum class Kind { Lambda, FreqRadius } kind;
    Rat bound;
    static Cutoff lambda(const Rat& l) { return {Kind::Lambda, l}; }
    static Cutoff freq(const Rat& rho) { return {Kind::FreqRadius, rho}; }
    double lambda_value() const;  // eigenvalue-scale bound as a double
    Rat enumeration_radius() const;  // rational radius covering the cutoff
    bool accepts_norm_sq(const Rat& norm_sq) const;  // torus-scale test
};

struct SpectralLine {
    double value = 0;                  // |D|-eigenvalue
    std::optional<Rat> norm_sq;        // torus family: value = 2 pi sqrt(norm_sq)
    bool signed_pair = false;          // both signs occur
    long long multiplicity = 0;        // total count across signs
    Rat weight = Rat(1);               // trace weight per eigenvector
};

struct SpectrumMultiset {
    std::string model;
    double cutoff = 0;
    std::vector<SpectralLine> lines;   // ascending by value
    Rat total_weight() const;
    long long total_multiplicity() const;
};

// Spectrum of D = -i sum eps^a (x) d^a on the level-n covering torus.
SpectrumMultiset torus_spectrum(const Tower& tw, int level, const Cutoff& cut);

// The same multiset assembled through the unitary V_n: eigenvalues
// 2 pi ||m - sum_h s_h(k_h)|| over mode tuples; throws InvariantViolation
// if the result differs from torus_spectrum.
SpectrumMultiset assembled_cover_spectrum(const Tower& tw, int level, const Cutoff& cut);

bool spectra_equal_exact(const SpectrumMultiset& a, const SpectrumMultiset& b,
                         std::string* first_diff = nullptr);

// ||C_n|| data: exact value 2 pi max over section-sum tuples, and the
// norm bound 2 pi sqrt(p) sum_h ||A^{h-1}||_F.
struct CnNorm {
    Rat max_norm_sq;      // max_tuples || sum_h s_h(k_h) ||^2
    Real exact;           // 2 pi sqrt(max_norm_sq)
    Real paper_bound;
};
CnNorm cn_norm(const Tower& tw, int level);
std::vector<CnNorm> cn_norm_sequence(const Tower& tw, int max_level);

// base spectra for the crossed product: (value, multiplicity) of |D_Z|
struct BaseLine {
    double value = 0;
    long long multiplicity = 1;
};
using BaseSpectrum = std::vector<BaseLine>;
BaseSpectrum base_point();                    // Z = C, D = 0
BaseSpectrum base_circle(double lambda_max);  // D = -i d/dt on the circle

// eigenvalues sqrt(lambda^2 + ||g||^2) over g in A^n Z^p, Clifford
// multiplicity 2^ceil(p/2) per (lambda, g)
SpectrumMultiset crossed_spectrum(const BaseSpectrum& base, const Tower& tw,
                                  int level, const Rat& lambda_cut);

// Christensen-Ivan family on UHF(r^infty) at covering level n, eigenvalue
// lines r^{ks} for k = -n..K plus the null line.
struct UhfParams {
    int r = 2;
    Rat s = Rat(1);
    int level = 0;
};
SpectrumMultiset uhf_spectrum(const UhfParams& u, int k_max);
Rat uhf_weight(int r, int k);  // (1 - r^{-2}) r^{2(k+1)}

// ---- commutator seminorms ----

struct TorusLip {
    Rat norm_sq;   // ||xi||^2
    double value;  // 2 pi ||xi||
};
TorusLip torus_lipnorm(const RatVec& xi);
// crossed products use the length itself, no 2 pi
double crossed_lipnorm(const RatVec& g);

// exact norm of [D_n, x_n] for x_n = b placed at tensor slot -n, with the
// certified lower bound and the geometric upper bound
struct UhfCommutator {
    double exact = 0;
    double lower = 0;
    double upper = 0;
};
UhfCommutator uhf_commutator(const UhfParams& u,
                             const std::vector<std::vector<std::complex<double>>>& b);

// explicit-matrix route for the crossed-product seminorm: builds the
// commutator [M_ell, U_g] on a window of the level-n lattice, checks every
// interior block equals ell(g) exactly, and returns ||g||
double crossed_commutator_explicit(const Tower& tw, int level, const RatVec& g,
                                   int window);

// ---- radii divergence ----

enum class RadiiModel { Torus, Crossed, NCTorus, Uhf };

struct RadiiRow {
    int k = 0;
    double lipnorm = 0;
    double quotient_norm = 0;  // of y_k = x_k / lipnorm
};

struct RadiiTable {
    RadiiModel model;
    bool purely_expanding = true;  // warning flag when false
    std::vector<RadiiRow> rows;
};

RadiiTable radii_divergence_torus(const Tower& tw, int k_max, bool two_pi = true);
RadiiTable radii_divergence_crossed(const Tower& tw, int k_max);
RadiiTable radii_divergence_nctorus(const Tower& tw, const nctorus::RationalAngle& th,
                                    int k_max);
RadiiTable radii_divergence_uhf(const UhfParams& u,
                                const std::vector<std::vector<std::complex<double>>>& b,
                                int k_max);

// L(phi_n(W(m))) = 2^{-n} L(W(m)), exact on the frequency squares
struct LipScaling {
    bool holds = false;
    Rat lhs_sq;  // (L_n / 2 pi)^2
    Rat rhs_sq;  // (2^{-n} L_0 / 2 pi)^2
};
LipScaling lip_scaling_check(const nctorus::RationalAngle& th, const IntVec& m, int n);

} // namespace solenoid::dirac
