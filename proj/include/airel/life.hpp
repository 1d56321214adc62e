#pragma once

#include <span>
#include <string>
#include <vector>

#include "airel/errors.hpp"
#include "airel/rng.hpp"

namespace airel::life {

enum class Family { exponential, weibull, normal, lognormal, gamma };

const char* family_name(Family f);
Family family_from_name(const std::string& name);

// One fitted (or directly constructed) life distribution. Parameter slots by
// family: exponential rate | weibull shape, scale | normal mean, sd |
// lognormal log-mean, log-sd | gamma shape, rate.
struct LifeModel {
    Family family = Family::exponential;
    double p1 = 0;
    double p2 = 0;
    double log_likelihood = 0;  // at the fitted sample; 0 for direct construction

    static LifeModel exponential(double rate);
    static LifeModel weibull(double shape, double scale);
    static LifeModel normal(double mean, double sd);
    static LifeModel lognormal(double log_mean, double log_sd);
    static LifeModel gamma(double shape, double rate);

    double density(double t) const;
    double cdf(double t) const;
    double reliability(double t) const;  // 1 - cdf
    // density / reliability. Domain: t >= 0 for positive-support families,
    // t > 0 for lognormal and for weibull with shape < 1; any t for normal.
    double hazard(double t) const;
    double quantile(double p) const;
};

// Maximum likelihood fit. Closed forms for exponential/normal/lognormal;
// Weibull shape by safeguarded Newton on the profile likelihood (bracket
// [1e-3, 1e3], step tolerance 1e-10, 200 iterations); gamma shape by the
// Minka fixed-point update at the same tolerance. Requires >= 3 samples, all
// positive for the positive-support families, and non-degenerate spread for
// every family except exponential.
LifeModel fit_mle(Family family, std::span<const double> samples);

double log_likelihood(const LifeModel& model, std::span<const double> samples);

struct KsResult {
    double d = 0;
    double critical = 0;
    double alpha = 0.05;
    bool pass = false;
};

// One-sample Kolmogorov-Smirnov test of samples against a fully specified
// model, with the asymptotic critical value c(alpha)/sqrt(n); c(0.05)=1.358,
// c(0.01)=1.628 (general alpha falls back to sqrt(-ln(alpha/2)/2)).
// Requires >= 5 samples.
KsResult ks_gof(const LifeModel& model, std::span<const double> samples, double alpha = 0.05);

// Power-law event-rate model for a repairable system observed over [0, T]:
// intensity(t) = (shape/scale) * (t/scale)^(shape-1).
struct NhppModel {
    double shape = 1;
    double scale = 1;
    double horizon = 0;

    double intensity(double t) const;
    double expected_count(double t) const;
    double log_likelihood(std::span<const double> epochs) const;
};

// Closed-form MLE from ordered event epochs in (0, T]:
// shape = n / sum(ln(T/t_i)), scale = T / n^(1/shape).
NhppModel fit_nhpp(std::span<const double> epochs, double horizon);

// Superposed hazard with a decreasing early leg, a constant core, and an
// increasing wear-out leg:
//   h(t) = (b1/e1)(t/e1)^(b1-1) + c + (b3/e3)(t/e3)^(b3-1), b1 < 1 < b3.
struct BathtubHazard {
    double early_shape = 0.5;   // b1 < 1
    double early_scale = 1;     // e1
    double constant_rate = 0;   // c >= 0
    double wear_shape = 3;      // b3 > 1
    double wear_scale = 1;      // e3

    double hazard(double t) const;         // t > 0
    double cumulative(double t) const;     // integral of hazard over (0, t]
    double reliability(double t) const;
};

// Validates the shape ordering (early < 1 < wear-out) and positivity.
BathtubHazard make_bathtub(double early_shape, double early_scale, double constant_rate,
                           double wear_shape, double wear_scale);

// Interior minimizer of the bathtub curve on [lo, hi] by golden section.
double bathtub_minimum(const BathtubHazard& h, double lo, double hi, double x_tol = 1e-10);

// Random variates driven by the pinned generator. Inverse CDF for
// exponential and weibull, polar rejection for normal, Marsaglia-Tsang with
// the shape boost for gamma shape < 1.
double sample_exponential(Rng& rng, double rate);
double sample_weibull(Rng& rng, double shape, double scale);
double sample_normal(Rng& rng, double mean, double sd);
double sample_lognormal(Rng& rng, double log_mean, double log_sd);
double sample_gamma(Rng& rng, double shape, double rate);
double sample(const LifeModel& model, Rng& rng);

}  // namespace airel::life
