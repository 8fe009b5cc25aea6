#include "solenoid/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

namespace solenoid::spectral {

CountingFunction::CountingFunction(const SpectrumMultiset& spec) {
    std::map<double, double> acc;
    for (const auto& l : spec.lines)
        acc[l.value] += static_cast<double>(l.multiplicity) * to_double(l.weight);
    values_.reserve(acc.size());
    weights_.reserve(acc.size());
    double cum = 0;
    for (const auto& [v, w] : acc) {
        values_.push_back(v);
        weights_.push_back(w);
        cum += w;
        cum_.push_back(cum);
    }
    total_ = cum;
}

double CountingFunction::count_leq(double lambda) const {
    auto it = std::upper_bound(values_.begin(), values_.end(), lambda);
    if (it == values_.begin()) return 0;
    return cum_[static_cast<size_t>(it - values_.begin()) - 1];
}

double CountingFunction::symmetric(double s) const {
    // strict inequality |value| < s
    auto it = std::lower_bound(values_.begin(), values_.end(), s);
    if (it == values_.begin()) return 0;
    return cum_[static_cast<size_t>(it - values_.begin()) - 1];
}

double CountingFunction::tail(double t) const { return total_ - symmetric(t); }

double CountingFunction::mu(double t) const {
    // inf { s : tail(s) <= t }: walk the descending tail weights
    double running = 0;
    for (size_t i = values_.size(); i-- > 0;) {
        running += weights_[i];
        if (running > t) return values_[i];
    }
    return 0;
}

double zeta_truncated(const SpectrumMultiset& spec, double s, ZetaForm form) {
    std::vector<double> terms;
    for (const auto& l : spec.lines) {
        double w = static_cast<double>(l.multiplicity) * to_double(l.weight);
        if (form == ZetaForm::AbsPower) {
            if (l.value == 0) continue;
            terms.push_back(w * std::pow(l.value, -s));
        } else {
            terms.push_back(w * std::pow(l.value * l.value + 1.0, -s / 2));
        }
    }
    std::sort(terms.begin(), terms.end());  // ascending magnitude, deterministic
    double sum = 0, comp = 0;
    for (double x : terms) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

DimensionFit dimension_and_residue(const SpectrumMultiset& spec) {
    CountingFunction N(spec);
    if (N.steps() == 0) throw PreconditionError("insufficient spectrum");
    const double hi = N.values().back();
    const double lo = hi / 4;

    std::vector<double> xs, ys;  // log value, log N
    double cum = 0;
    for (size_t i = 0; i < N.steps(); ++i) {
        cum += N.weights()[i];
        double v = N.values()[i];
        if (v >= lo && v <= hi && v > 0 && cum > 0) {
            xs.push_back(std::log(v));
            ys.push_back(std::log(cum));
        }
    }
    DimensionFit fit;
    fit.window_lo = lo;
    fit.window_hi = hi;
    fit.window_steps = xs.size();
    if (xs.size() < 50) throw PreconditionError("insufficient spectrum");

    double mx = 0, my = 0;
    for (size_t i = 0; i < xs.size(); ++i) { mx += xs[i]; my += ys[i]; }
    mx /= xs.size();
    my /= ys.size();
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    fit.d_hat = sxy / sxx;

    double csum = 0;
    cum = 0;
    size_t used = 0;
    for (size_t i = 0; i < N.steps(); ++i) {
        cum += N.weights()[i];
        double v = N.values()[i];
        if (v >= lo && v <= hi && v > 0) {
            csum += cum / std::pow(v, fit.d_hat);
            ++used;
        }
    }
    fit.c_hat = csum / static_cast<double>(used);
    fit.residue = fit.d_hat * fit.c_hat;

    double rss = 0;
    double b = my - fit.d_hat * mx;
    for (size_t i = 0; i < xs.size(); ++i) {
        double e = ys[i] - (fit.d_hat * xs[i] + b);
        rss += e * e;
    }
    fit.fit_residual = std::sqrt(rss / static_cast<double>(xs.size()));
    return fit;
}

double dixmier_average(const SpectrumMultiset& spec, double d) {
    if (d <= 0) throw PreconditionError("dixmier average needs d > 0");
    CountingFunction N(spec);
    // mu steps of (D^2+1)^{-1/2}: ascending |D| values give descending mu
    double integral = 0;
    for (size_t i = 0; i < N.steps(); ++i) {
        double v = N.values()[i];
        double mu = 1.0 / std::sqrt(v * v + 1.0);
        integral += N.weights()[i] * std::pow(mu, d);
    }
    double t = N.total_weight();
    if (t <= 1) throw PreconditionError("dixmier average needs total weight > 1");
    return integral / std::log(t);
}

PerturbationResult perturbation_check(int dim, int grid_points, int trials,
                                      std::uint64_t seed) {
    if (dim < 2 || dim > 60) throw PreconditionError("dimension must be in [2, 60]");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    PerturbationResult res;
    res.trials = trials;
    res.worst_gap = 1e300;

    for (int trial = 0; trial < trials; ++trial) {
        Eigen::MatrixXd T(dim, dim), C(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j <= i; ++j) {
                T(i, j) = T(j, i) = gauss(rng);
                C(i, j) = C(j, i) = 0.25 * gauss(rng);
            }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> est(T), esc(C), esp(T + C);
        double c = std::max(std::abs(esc.eigenvalues()(0)),
                            std::abs(esc.eigenvalues()(dim - 1)));
        auto lam_t = est.eigenvalues();
        auto lam_p = esp.eigenvalues();
        double top = lam_t.cwiseAbs().maxCoeff() + c + 1.0;

        auto count_lt = [dim](const Eigen::VectorXd& lam, double s) {
            int n = 0;
            for (int i = 0; i < dim; ++i)
                if (std::abs(lam(i)) < s) ++n;
            return n;
        };
        const double c_pad = c * (1 + 1e-12) + 1e-12;
        for (int gi = 1; gi <= grid_points; ++gi) {
            double s = top * gi / grid_points;
            int lhs = count_lt(lam_p, s);
            int rhs = count_lt(lam_t, s + c_pad);
            res.worst_gap = std::min(res.worst_gap, static_cast<double>(rhs - lhs));
            if (lhs > rhs) {
                ++res.failures;
                break;
            }
        }

        // singular-value transcription on an invertible sample:
        // Lambda_T(s) = lambda_{|T|^{-1}}(1/s) away from atoms
        double min_abs = lam_t.cwiseAbs().minCoeff();
        if (min_abs > 1e-8) {
            std::uniform_real_distribution<double> us(min_abs / 2, top);
            for (int k = 0; k < 16; ++k) {
                double s = us(rng);
                int lhs = count_lt(lam_t, s);
                int rhs = 0;  // #{ 1/|lam| >= 1/s } = #{ |lam| <= s }
                for (int i = 0; i < dim; ++i)
                    if (1.0 / std::abs(lam_t(i)) >= 1.0 / s) ++rhs;
                // equality can differ only at atoms; exclude exact hits
                bool atom = false;
                for (int i = 0; i < dim; ++i)
                    if (std::abs(std::abs(lam_t(i)) - s) < 1e-12) atom = true;
                if (!atom && lhs != rhs) {
                    ++res.failures;
                    break;
                }
            }
        }
    }
    return res;
}

namespace {

double richardson_residue(const SpectrumMultiset& spec, double d) {
    // f(eps) = eps * zeta(d + eps) -> residue as eps -> 0, first order
    double f1 = 0.5 * zeta_truncated(spec, d + 0.5, ZetaForm::Resolvent);
    double f2 = 0.25 * zeta_truncated(spec, d + 0.25, ZetaForm::Resolvent);
    double f3 = 0.125 * zeta_truncated(spec, d + 0.125, ZetaForm::Resolvent);
    double r12 = 2 * f2 - f1;
    double r23 = 2 * f3 - f2;
    return 0.5 * (r12 + r23) + (r23 - r12);  // one more extrapolation step
}

} // namespace

ResidueStability residue_stability_check(const SpectrumMultiset& base,
                                         const SpectrumMultiset& perturbed, double d) {
    ResidueStability out;
    out.base_residue = richardson_residue(base, d);
    out.perturbed_residue = richardson_residue(perturbed, d);
    out.difference_rel =
        std::abs(out.base_residue - out.perturbed_residue) /
        std::max(1e-300, std::abs(out.base_residue));

    // appendix bound at t = 1, s = d + 1/2 on the perturbed truncation:
    // | zeta_{|D|, cut at t} (s) - zeta_{(D^2+1)^{1/2}} (s) |
    //   <= sum_{v < t} w + (s/2) sum_{v >= t} w v^{-s-2}
    const double s = d + 0.5, t = 1.0;
    double z_abs = 0, z_res = 0, low = 0, tail = 0;
    for (const auto& l : perturbed.lines) {
        double w = static_cast<double>(l.multiplicity) * to_double(l.weight);
        z_res += w * std::pow(l.value * l.value + 1.0, -s / 2);
        if (l.value < t) low += w;
        else {
            z_abs += w * std::pow(l.value, -s);
            tail += w * std::pow(l.value, -s - 2);
        }
    }
    out.same_res_bound_ok = std::abs(z_abs - z_res) <= low + (s / 2) * tail + 1e-12;
    return out;
}

double UhfClosedForm::zeta(double t) const {
    const double rr = static_cast<double>(r);
    const double sv = to_double(s);
    if (t * sv <= 2) throw PreconditionError("zeta closed form needs t > 2/s");
    // (1 - r^{-2}) r^2 sum_{k >= -n} r^{k(2 - s t)}
    double q = std::pow(rr, 2.0 - sv * t);
    double first = std::pow(rr, -level * (2.0 - sv * t));
    return (1.0 - std::pow(rr, -2.0)) * rr * rr * first / (1.0 - q);
}

UhfClosedForm uhf_closed_form(int r, const Rat& s, int level) {
    if (r < 2) throw PreconditionError("UHF needs r >= 2");
    if (s <= 0) throw PreconditionError("UHF Dirac needs s > 0");
    UhfClosedForm f;
    f.r = r;
    f.s = s;
    f.level = level;
    f.abscissa = Rat(2) / s;
    double rr = static_cast<double>(r);
    f.residue = (rr * rr - 1.0) / (to_double(s) * std::log(rr));
    return f;
}

} // namespace solenoid::spectral
