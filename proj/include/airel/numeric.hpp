#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace airel::numeric {

double mean(std::span<const double> xs);
// Population variance (divides by n), the form used by the MLE closed forms.
double variance(std::span<const double> xs);

// Round half away from zero; used wherever day counts are shown as integers.
double round_half_away(double x);

// Standard normal CDF via erfc.
double normal_cdf(double x);
// Inverse standard normal CDF. Rational initial guess polished by one Halley
// step with the exact CDF; absolute error below 1e-14 over (1e-300, 1-1e-16).
double normal_quantile(double p);

// Regularized lower incomplete gamma P(a, x); series for x < a+1, continued
// fraction otherwise.
double gamma_p(double a, double x);

double digamma(double x);
double trigamma(double x);

// Recursive adaptive Simpson quadrature with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 60);

struct LinearFit {
    double intercept = 0;
    double slope = 0;
};

// Ordinary least squares of y on x. Requires xs.size() == ys.size() >= 2 and
// at least two distinct x values.
LinearFit least_squares(std::span<const double> xs, std::span<const double> ys);

// Golden-section minimizer for a unimodal function on [a, b].
double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          double x_tol);

// Root of a strictly increasing function via bracket growth plus bisection.
// Starts from [lo, hi_guess], doubles the upper end until f turns positive.
double increasing_root(const std::function<double(double)>& f, double lo, double hi_guess);

// Empirical quantile with linear interpolation between order statistics
// (the common "type 7" rule). q in [0, 1].
double quantile(std::vector<double> xs, double q);

}  // namespace airel::numeric
