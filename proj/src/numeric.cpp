#include "airel/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "airel/errors.hpp"

namespace airel::numeric {

double mean(std::span<const double> xs) {
    if (xs.empty()) throw Error(Errc::empty_input, "mean of empty sample");
    double s = 0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
    double m = mean(xs);
    double s = 0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size());
}

double round_half_away(double x) {
    // std::round already rounds halfway cases away from zero.
    return std::round(x);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

namespace {

// Rational approximation (Acklam-style) for the probit function.
double normal_quantile_approx(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    if (p < p_low) {
        double q = std::sqrt(-2 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    if (p > 1 - p_low) {
        double q = std::sqrt(-2 * std::log(1 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    double q = p - 0.5;
    double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

}  // namespace

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw Error(Errc::domain_error, "normal quantile needs p in (0,1)");
    // Work on the lower half: near 1 the refinement residual cdf(x) - p is
    // dominated by rounding, while near 0 both terms stay well scaled.
    if (p > 0.5) return -normal_quantile(1.0 - p);
    double x = normal_quantile_approx(p);
    // One Halley refinement against the exact CDF.
    static const double inv_sqrt_2pi = 0.3989422804014327;
    double e = normal_cdf(x) - p;
    double pdf = inv_sqrt_2pi * std::exp(-0.5 * x * x);
    if (pdf > 0) {
        double u = e / pdf;
        x -= u / (1 + x * u / 2);
    }
    return x;
}

double gamma_p(double a, double x) {
    if (a <= 0) throw Error(Errc::domain_error, "gamma_p needs a > 0");
    if (x < 0) throw Error(Errc::domain_error, "gamma_p needs x >= 0");
    if (x == 0) return 0;
    const double lg = std::lgamma(a);
    if (x < a + 1) {
        // Series expansion.
        double ap = a;
        double sum = 1.0 / a;
        double del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
        }
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    // Continued fraction for Q(a, x).
    const double tiny = 1e-300;
    double b = x + 1 - a;
    double c = 1 / tiny;
    double d = 1 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1) < 1e-16) break;
    }
    double q = std::exp(-x + a * std::log(x) - lg) * h;
    return 1 - q;
}

double digamma(double x) {
    if (x <= 0) throw Error(Errc::domain_error, "digamma needs x > 0");
    double result = 0;
    while (x < 6) {
        result -= 1 / x;
        x += 1;
    }
    // Asymptotic series with Bernoulli coefficients.
    double inv = 1 / x;
    double inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv;
    result -= inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 * (1.0 / 132)))));
    return result;
}

double trigamma(double x) {
    if (x <= 0) throw Error(Errc::domain_error, "trigamma needs x > 0");
    double result = 0;
    while (x < 10) {
        result += 1 / (x * x);
        x += 1;
    }
    double inv = 1 / x;
    double inv2 = inv * inv;
    result += inv * (1 + 0.5 * inv +
                     inv2 * (1.0 / 6 -
                             inv2 * (1.0 / 30 -
                                     inv2 * (1.0 / 42 -
                                             inv2 * (1.0 / 30 -
                                                     inv2 * (5.0 / 66 - inv2 * 691.0 / 2730))))));
    return result;
}

namespace {

double simpson_leg(const std::function<double(double)>& f, double a, double fa, double b,
                   double fb, double m, double fm, double whole, double tol, int depth) {
    double lm = (a + m) / 2, rm = (m + b) / 2;
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15 * tol) return left + right + delta / 15;
    return simpson_leg(f, a, fa, m, fm, lm, flm, left, tol / 2, depth - 1) +
           simpson_leg(f, m, fm, b, fb, rm, frm, right, tol / 2, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth) {
    if (a == b) return 0;
    double fa = f(a), fb = f(b);
    double m = (a + b) / 2;
    double fm = f(m);
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return simpson_leg(f, a, fa, b, fb, m, fm, whole, abs_tol, max_depth);
}

LinearFit least_squares(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw Error(Errc::empty_input, "least squares needs two paired points");
    double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0) throw Error(Errc::degenerate_samples, "least squares: all x identical");
    LinearFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          double x_tol) {
    const double phi = (std::sqrt(5.0) - 1) / 2;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > x_tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return (a + b) / 2;
}

double increasing_root(const std::function<double(double)>& f, double lo, double hi_guess) {
    double hi = hi_guess;
    int grow = 0;
    while (f(hi) < 0) {
        lo = hi;
        hi *= 2;
        if (++grow > 240) throw NumericError(Errc::no_convergence, "root bracket never closed");
    }
    for (int i = 0; i < 200; ++i) {
        double mid = (lo + hi) / 2;
        if (f(mid) < 0)
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / 2;
}

double quantile(std::vector<double> xs, double q) {
    if (xs.empty()) throw Error(Errc::empty_input, "quantile of empty sample");
    if (!(q >= 0 && q <= 1)) throw Error(Errc::domain_error, "quantile level outside [0,1]");
    std::sort(xs.begin(), xs.end());
    double h = q * (static_cast<double>(xs.size()) - 1);
    std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= xs.size()) return xs.back();
    double frac = h - static_cast<double>(lo);
    return xs[lo] + frac * (xs[lo + 1] - xs[lo]);
}

}  // namespace airel::numeric
