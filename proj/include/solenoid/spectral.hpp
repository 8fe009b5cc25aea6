#pragma once

#include "solenoid/dirac.hpp"

#include <cstdint>

namespace solenoid::spectral {

using dirac::SpectrumMultiset;

// N, Lambda_T, lambda_T and mu_T as step functions over the weighted
// eigenvalue multiset of |D|.
class CountingFunction {
public:
    explicit CountingFunction(const SpectrumMultiset& spec);

    double total_weight() const { return total_; }
    size_t steps() const { return values_.size(); }

    double count_leq(double lambda) const;      // N(lambda), values <= lambda
    double symmetric(double s) const;           // Lambda_T(s), |value| < s
    double tail(double t) const;                // lambda_T(t), values >= t
    double mu(double t) const;                  // inf { s : tail(s) <= t }

    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& weights() const { return weights_; }

private:
    std::vector<double> values_;   // ascending distinct
    std::vector<double> weights_;  // weight per value
    std::vector<double> cum_;      // cumulative weight through values_[i]
    double total_ = 0;
};

enum class ZetaForm { AbsPower, Resolvent };  // |D|^{-s} vs (D^2+1)^{-s/2}

// deterministic ascending compensated sum; AbsPower skips the null space
double zeta_truncated(const SpectrumMultiset& spec, double s, ZetaForm form);

struct DimensionFit {
    double d_hat = 0;
    double c_hat = 0;        // mean of N(v) / v^d over the window
    double residue = 0;      // d_hat * c_hat
    double fit_residual = 0; // rms residual of the log-log fit
    size_t window_steps = 0;
    double window_lo = 0, window_hi = 0;
};

// least-squares slope of log N vs log value over the dyadic window
// [max/4, max]; requires >= 50 steps inside the window
DimensionFit dimension_and_residue(const SpectrumMultiset& spec);

// (1 / log t) int_0^t mu(s)^d ds at t = total weight, for the singular
// values of (D^2+1)^{-1/2}
double dixmier_average(const SpectrumMultiset& spec, double d);

struct PerturbationResult {
    int trials = 0;
    int failures = 0;
    double worst_gap = 0;  // most negative slack seen (ok when >= 0)
    bool ok() const { return failures == 0; }
};

// random Hermitian T and C: Lambda_{T+C}(s) <= Lambda_T(s + ||C||) on a
// grid, plus the singular-value transcription Lambda_T(s) = lambda_{|T|^{-1}}(1/s)
// on invertible samples
PerturbationResult perturbation_check(int dim, int grid_points, int trials,
                                      std::uint64_t seed);

struct ResidueStability {
    double base_residue = 0;
    double perturbed_residue = 0;
    double difference_rel = 0;
    bool same_res_bound_ok = false;  // appendix integral bound on the truncation
};

// Richardson-extrapolated (s - d) zeta(s) on s = d + 1/2, 1/4, 1/8 for both
// spectra, plus the |D| vs resolvent zeta difference bound at t = 1
ResidueStability residue_stability_check(const SpectrumMultiset& base,
                                         const SpectrumMultiset& perturbed, double d);

// closed forms for the Christensen-Ivan spectra
struct UhfClosedForm {
    int r = 2;
    Rat s = Rat(1);
    int level = 0;
    Rat abscissa;            // 2/s, exact
    double residue = 0;      // (r^2 - 1) / (s ln r), level-independent
    double zeta(double t) const;  // full-series value for t > abscissa
};
UhfClosedForm uhf_closed_form(int r, const Rat& s, int level);

} // namespace solenoid::spectral
