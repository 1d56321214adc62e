#pragma once

#include <functional>
#include <span>
#include <vector>

#include "airel/errors.hpp"

namespace airel::alt {

struct StressGroup {
    double stress = 0;
    std::vector<double> durations;
};

// Log-linear stress-life Weibull: scale eta(S) = eta0 * exp(stress_coeff*S)
// with a shape shared across stress levels.
struct StressLifeModel {
    double shape = 1;
    double eta0 = 1;
    double stress_coeff = 0;

    double eta(double stress) const;
    double reliability(double t, double stress) const;
};

// Per-group Weibull fits; the common shape is the group-size-weighted mean of
// the per-group shapes, and (ln eta0, stress_coeff) come from least squares
// of ln(per-group scale) on stress. Needs >= 2 distinct stress levels with
// >= 3 samples each.
StressLifeModel fit_stress_life(std::span<const StressGroup> groups);

// Exponential rate accelerated by stress: rate(S) = base_rate * exp(gamma*S),
// reliability(t, S) = exp(-rate(S) * t).
struct StressRateModel {
    double base_rate = 1;
    double gamma = 0;

    double rate(double stress) const;
    double reliability(double t, double stress) const;
};

StressRateModel make_stress_rate(double base_rate, double gamma);

// CDF of failure by time t under a time-varying rate: 1 - exp(-int_0^t r).
// The rate must be non-negative on [0, t]; integrated by adaptive Simpson at
// the given tolerance.
double time_varying_cdf(const std::function<double(double)>& rate, double t,
                        double abs_tol = 1e-10);

// Discrete posterior over a (shape, scale) Weibull grid. Weights are row
// major over shape_axis x scale_axis and sum to 1.
struct PosteriorGrid {
    std::vector<double> shape_axis;
    std::vector<double> scale_axis;
    std::vector<double> weights;

    double weight_at(std::size_t shape_idx, std::size_t scale_idx) const;
};

PosteriorGrid uniform_grid(double shape_lo, double shape_hi, std::size_t shape_n,
                           double scale_lo, double scale_hi, std::size_t scale_n);

// Bayes update with the Weibull likelihood of the samples, computed in log
// space and renormalized. Errors if every cell underflows to zero.
PosteriorGrid bayes_update(const PosteriorGrid& prior, std::span<const double> samples);

std::pair<double, double> posterior_mode(const PosteriorGrid& grid);  // (shape, scale)

// Posterior predictive reliability at t: sum of R(t | shape, scale) weighted
// by the grid posterior.
double posterior_reliability(const PosteriorGrid& grid, double t);

}  // namespace airel::alt
