#include "airel/life.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "airel/numeric.hpp"

namespace airel::life {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;

void require_positive_support(double t, const char* what) {
    if (t < 0) throw Error(Errc::domain_error, std::string(what) + " undefined for t < 0");
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::exponential: return "exponential";
        case Family::weibull: return "weibull";
        case Family::normal: return "normal";
        case Family::lognormal: return "lognormal";
        case Family::gamma: return "gamma";
    }
    return "exponential";
}

Family family_from_name(const std::string& name) {
    if (name == "exponential") return Family::exponential;
    if (name == "weibull") return Family::weibull;
    if (name == "normal") return Family::normal;
    if (name == "lognormal") return Family::lognormal;
    if (name == "gamma") return Family::gamma;
    throw Error(Errc::bad_argument, "unknown family '" + name + "'");
}

LifeModel LifeModel::exponential(double rate) {
    if (!(rate > 0)) throw Error(Errc::domain_error, "exponential rate must be positive");
    return {Family::exponential, rate, 0, 0};
}

LifeModel LifeModel::weibull(double shape, double scale) {
    if (!(shape > 0) || !(scale > 0))
        throw Error(Errc::domain_error, "weibull shape and scale must be positive");
    return {Family::weibull, shape, scale, 0};
}

LifeModel LifeModel::normal(double mean, double sd) {
    if (!(sd > 0)) throw Error(Errc::domain_error, "normal sd must be positive");
    return {Family::normal, mean, sd, 0};
}

LifeModel LifeModel::lognormal(double log_mean, double log_sd) {
    if (!(log_sd > 0)) throw Error(Errc::domain_error, "lognormal log-sd must be positive");
    return {Family::lognormal, log_mean, log_sd, 0};
}

LifeModel LifeModel::gamma(double shape, double rate) {
    if (!(shape > 0) || !(rate > 0))
        throw Error(Errc::domain_error, "gamma shape and rate must be positive");
    return {Family::gamma, shape, rate, 0};
}

double LifeModel::density(double t) const {
    switch (family) {
        case Family::exponential:
            require_positive_support(t, "exponential density");
            return p1 * std::exp(-p1 * t);
        case Family::weibull: {
            require_positive_support(t, "weibull density");
            if (t == 0) {
                if (p1 < 1) throw Error(Errc::domain_error, "weibull shape<1 density diverges at 0");
                return p1 == 1 ? 1 / p2 : 0;
            }
            double z = t / p2;
            return (p1 / p2) * std::pow(z, p1 - 1) * std::exp(-std::pow(z, p1));
        }
        case Family::normal: {
            double z = (t - p1) / p2;
            return kInvSqrt2Pi / p2 * std::exp(-0.5 * z * z);
        }
        case Family::lognormal: {
            if (t < 0) throw Error(Errc::domain_error, "lognormal density undefined for t < 0");
            if (t == 0) return 0;
            double z = (std::log(t) - p1) / p2;
            return kInvSqrt2Pi / (p2 * t) * std::exp(-0.5 * z * z);
        }
        case Family::gamma: {
            require_positive_support(t, "gamma density");
            if (t == 0) {
                if (p1 < 1) throw Error(Errc::domain_error, "gamma shape<1 density diverges at 0");
                return p1 == 1 ? p2 : 0;
            }
            return std::exp(p1 * std::log(p2) + (p1 - 1) * std::log(t) - p2 * t - std::lgamma(p1));
        }
    }
    return 0;
}

double LifeModel::cdf(double t) const {
    switch (family) {
        case Family::exponential:
            require_positive_support(t, "exponential cdf");
            return -std::expm1(-p1 * t);
        case Family::weibull: {
            require_positive_support(t, "weibull cdf");
            if (t == 0) return 0;
            return -std::expm1(-std::pow(t / p2, p1));
        }
        case Family::normal:
            return numeric::normal_cdf((t - p1) / p2);
        case Family::lognormal:
            if (t < 0) throw Error(Errc::domain_error, "lognormal cdf undefined for t < 0");
            if (t == 0) return 0;
            return numeric::normal_cdf((std::log(t) - p1) / p2);
        case Family::gamma:
            require_positive_support(t, "gamma cdf");
            if (t == 0) return 0;
            return numeric::gamma_p(p1, p2 * t);
    }
    return 0;
}

double LifeModel::reliability(double t) const {
    switch (family) {
        case Family::exponential:
            require_positive_support(t, "exponential reliability");
            return std::exp(-p1 * t);
        case Family::weibull:
            require_positive_support(t, "weibull reliability");
            if (t == 0) return 1;
            return std::exp(-std::pow(t / p2, p1));
        case Family::normal:
            return numeric::normal_cdf(-(t - p1) / p2);
        case Family::lognormal:
            if (t < 0) throw Error(Errc::domain_error, "lognormal reliability undefined for t < 0");
            if (t == 0) return 1;
            return numeric::normal_cdf(-(std::log(t) - p1) / p2);
        case Family::gamma:
            return 1 - cdf(t);
    }
    return 0;
}

double LifeModel::hazard(double t) const {
    if (family == Family::weibull && p1 < 1 && t == 0)
        throw Error(Errc::domain_error, "weibull shape<1 hazard diverges at 0");
    if (family == Family::lognormal && t == 0) return 0;
    if (family == Family::exponential) {
        require_positive_support(t, "exponential hazard");
        return p1;  // memoryless
    }
    if (family == Family::weibull) {
        require_positive_support(t, "weibull hazard");
        if (t == 0) return p1 == 1 ? 1 / p2 : 0;
        return (p1 / p2) * std::pow(t / p2, p1 - 1);
    }
    double r = reliability(t);
    if (r <= 0) throw NumericError(Errc::domain_error, "hazard beyond numeric support");
    return density(t) / r;
}

double LifeModel::quantile(double p) const {
    if (!(p > 0 && p < 1)) throw Error(Errc::domain_error, "quantile needs p in (0,1)");
    switch (family) {
        case Family::exponential:
            return -std::log1p(-p) / p1;
        case Family::weibull:
            return p2 * std::pow(-std::log1p(-p), 1 / p1);
        case Family::normal:
            return p1 + p2 * numeric::normal_quantile(p);
        case Family::lognormal:
            return std::exp(p1 + p2 * numeric::normal_quantile(p));
        case Family::gamma: {
            // Invert the CDF by bracketed bisection; good enough for test and
            // reporting use.
            double mean = p1 / p2;
            double sd = std::sqrt(p1) / p2;
            double hi = mean + 10 * sd + 1;
            while (cdf(hi) < p) hi *= 2;
            double lo = 0;
            for (int i = 0; i < 200; ++i) {
                double mid = (lo + hi) / 2;
                if (cdf(mid) < p)
                    lo = mid;
                else
                    hi = mid;
            }
            return (lo + hi) / 2;
        }
    }
    return 0;
}

double log_likelihood(const LifeModel& model, std::span<const double> samples) {
    double ll = 0;
    for (double x : samples) ll += std::log(model.density(x));
    return ll;
}

namespace {

void check_samples(Family family, std::span<const double> samples) {
    if (samples.size() < 3)
        throw Error(Errc::too_few_samples, "fit needs at least 3 samples");
    bool positive_support = family != Family::normal;
    for (double x : samples) {
        if (!std::isfinite(x)) throw Error(Errc::domain_error, "non-finite sample");
        if (positive_support && !(x > 0))
            throw Error(Errc::domain_error,
                        std::string(family_name(family)) + " fit needs positive samples");
    }
}

bool all_equal(std::span<const double> samples) {
    for (double x : samples)
        if (x != samples[0]) return false;
    return true;
}

LifeModel fit_weibull(std::span<const double> samples) {
    const double n = static_cast<double>(samples.size());
    std::vector<double> logs(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) logs[i] = std::log(samples[i]);
    double mean_log = numeric::mean(logs);
    const double max_log = *std::max_element(logs.begin(), logs.end());

    // Profile-likelihood score in the shape; eta is concentrated out.
    // g(b) = 1/b + mean(ln x) - sum(x^b ln x)/sum(x^b), strictly decreasing.
    auto sums = [&](double b, double& s0, double& s1, double& s2) {
        s0 = s1 = s2 = 0;
        for (double lx : logs) {
            double w = std::exp(b * (lx - max_log));  // scaled to avoid overflow
            s0 += w;
            s1 += w * lx;
            s2 += w * lx * lx;
        }
    };
    auto score = [&](double b) {
        double s0, s1, s2;
        sums(b, s0, s1, s2);
        return 1 / b + mean_log - s1 / s0;
    };

    double lo = 1e-3, hi = 1e3;
    if (score(lo) < 0 || score(hi) > 0)
        throw NumericError(Errc::no_convergence, "weibull shape outside [1e-3, 1e3]");

    double sd_log = std::sqrt(numeric::variance(logs));
    double b = std::clamp(1.2825498301618641 / sd_log, lo, hi);  // pi/sqrt(6) moment start
    for (int iter = 0; iter < 200; ++iter) {
        double s0, s1, s2;
        sums(b, s0, s1, s2);
        double g = 1 / b + mean_log - s1 / s0;
        double gp = -1 / (b * b) - (s2 * s0 - s1 * s1) / (s0 * s0);
        double step = g / gp;
        double next = b - step;
        if (!(next > lo && next < hi)) {
            // Bisect on the bracketed sign change instead.
            if (g > 0)
                lo = b;
            else
                hi = b;
            next = (lo + hi) / 2;
            step = next - b;
        } else if (g > 0) {
            lo = b;
        } else {
            hi = b;
        }
        b = next;
        if (std::fabs(step) < 1e-10) break;
        if (iter == 199)
            throw NumericError(Errc::no_convergence, "weibull shape iteration did not settle");
    }
    double s0, s1, s2;
    sums(b, s0, s1, s2);
    double eta = std::exp(max_log + std::log(s0 / n) / b);
    LifeModel m = LifeModel::weibull(b, eta);
    m.log_likelihood = log_likelihood(m, samples);
    return m;
}

LifeModel fit_gamma(std::span<const double> samples) {
    std::vector<double> logs(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) logs[i] = std::log(samples[i]);
    double mean_x = numeric::mean(samples);
    double mean_log = numeric::mean(logs);
    double s = std::log(mean_x) - mean_log;
    if (!(s > 0)) throw Error(Errc::degenerate_samples, "gamma fit needs sample spread");

    double k = (3 - s + std::sqrt((s - 3) * (s - 3) + 24 * s)) / (12 * s);
    for (int iter = 0; iter < 200; ++iter) {
        double num = mean_log - std::log(mean_x) + std::log(k) - numeric::digamma(k);
        double den = k * k * (1 / k - numeric::trigamma(k));
        double next = 1 / (1 / k + num / den);
        double step = next - k;
        k = next;
        if (!(k > 0) || !std::isfinite(k))
            throw NumericError(Errc::no_convergence, "gamma shape update left the domain");
        if (std::fabs(step) < 1e-10 * std::max(1.0, k)) break;
        if (iter == 199)
            throw NumericError(Errc::no_convergence, "gamma shape iteration did not settle");
    }
    LifeModel m = LifeModel::gamma(k, k / mean_x);
    m.log_likelihood = log_likelihood(m, samples);
    return m;
}

}  // namespace

LifeModel fit_mle(Family family, std::span<const double> samples) {
    check_samples(family, samples);
    if (family != Family::exponential && all_equal(samples))
        throw Error(Errc::degenerate_samples, "samples are identical");

    switch (family) {
        case Family::exponential: {
            LifeModel m = LifeModel::exponential(1 / numeric::mean(samples));
            m.log_likelihood = log_likelihood(m, samples);
            return m;
        }
        case Family::normal: {
            double sd = std::sqrt(numeric::variance(samples));
            LifeModel m = LifeModel::normal(numeric::mean(samples), sd);
            m.log_likelihood = log_likelihood(m, samples);
            return m;
        }
        case Family::lognormal: {
            std::vector<double> logs(samples.size());
            for (std::size_t i = 0; i < samples.size(); ++i) logs[i] = std::log(samples[i]);
            double sd = std::sqrt(numeric::variance(logs));
            if (!(sd > 0)) throw Error(Errc::degenerate_samples, "samples are identical");
            LifeModel m = LifeModel::lognormal(numeric::mean(logs), sd);
            m.log_likelihood = log_likelihood(m, samples);
            return m;
        }
        case Family::weibull:
            return fit_weibull(samples);
        case Family::gamma:
            return fit_gamma(samples);
    }
    throw Error(Errc::bad_argument, "unknown family");
}

KsResult ks_gof(const LifeModel& model, std::span<const double> samples, double alpha) {
    if (samples.size() < 5) throw Error(Errc::too_few_samples, "KS test needs at least 5 samples");
    if (!(alpha > 0 && alpha < 1)) throw Error(Errc::bad_alpha, "alpha outside (0,1)");
    std::vector<double> xs(samples.begin(), samples.end());
    std::sort(xs.begin(), xs.end());
    double n = static_cast<double>(xs.size());
    double d = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double f = model.cdf(xs[i]);
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
    }
    double c;
    if (alpha == 0.05)
        c = 1.358;
    else if (alpha == 0.01)
        c = 1.628;
    else
        c = std::sqrt(-std::log(alpha / 2) / 2);
    KsResult r;
    r.d = d;
    r.alpha = alpha;
    r.critical = c / std::sqrt(n);
    r.pass = d <= r.critical;
    return r;
}

double NhppModel::intensity(double t) const {
    if (!(t > 0)) throw Error(Errc::domain_error, "power-law intensity needs t > 0");
    return (shape / scale) * std::pow(t / scale, shape - 1);
}

double NhppModel::expected_count(double t) const {
    if (t < 0) throw Error(Errc::domain_error, "expected count needs t >= 0");
    if (t == 0) return 0;
    return std::pow(t / scale, shape);
}

double NhppModel::log_likelihood(std::span<const double> epochs) const {
    double ll = -expected_count(horizon);
    for (double t : epochs) ll += std::log(intensity(t));
    return ll;
}

NhppModel fit_nhpp(std::span<const double> epochs, double horizon) {
    if (epochs.size() < 2) throw Error(Errc::too_few_events, "power-law fit needs >= 2 events");
    if (!(horizon > 0)) throw Error(Errc::domain_error, "horizon must be positive");
    double sum = 0;
    for (double t : epochs) {
        if (!(t > 0) || t > horizon)
            throw Error(Errc::epoch_out_of_range, "event epochs must lie in (0, horizon]");
        sum += std::log(horizon / t);
    }
    if (!(sum > 0))
        throw Error(Errc::degenerate_samples, "all events at the horizon");
    double n = static_cast<double>(epochs.size());
    NhppModel m;
    m.shape = n / sum;
    m.scale = horizon / std::pow(n, 1 / m.shape);
    m.horizon = horizon;
    return m;
}

double BathtubHazard::hazard(double t) const {
    if (!(t > 0)) throw Error(Errc::domain_error, "bathtub hazard needs t > 0");
    return (early_shape / early_scale) * std::pow(t / early_scale, early_shape - 1) +
           constant_rate + (wear_shape / wear_scale) * std::pow(t / wear_scale, wear_shape - 1);
}

double BathtubHazard::cumulative(double t) const {
    if (t < 0) throw Error(Errc::domain_error, "cumulative hazard needs t >= 0");
    if (t == 0) return 0;
    return std::pow(t / early_scale, early_shape) + constant_rate * t +
           std::pow(t / wear_scale, wear_shape);
}

double BathtubHazard::reliability(double t) const { return std::exp(-cumulative(t)); }

BathtubHazard make_bathtub(double early_shape, double early_scale, double constant_rate,
                           double wear_shape, double wear_scale) {
    if (!(early_shape > 0) || !(early_scale > 0) || !(wear_scale > 0) || constant_rate < 0)
        throw Error(Errc::domain_error, "bathtub parameters must be positive");
    if (!(early_shape < 1) || !(wear_shape > 1))
        throw Error(Errc::bad_shape_order,
                    "bathtub needs early shape < 1 < wear-out shape");
    return {early_shape, early_scale, constant_rate, wear_shape, wear_scale};
}

double bathtub_minimum(const BathtubHazard& h, double lo, double hi, double x_tol) {
    if (!(lo > 0) || !(hi > lo)) throw Error(Errc::domain_error, "need 0 < lo < hi");
    return numeric::golden_section_min([&](double t) { return h.hazard(t); }, lo, hi, x_tol);
}

double sample_exponential(Rng& rng, double rate) {
    if (!(rate > 0)) throw Error(Errc::domain_error, "exponential rate must be positive");
    return -std::log(rng.uniform01()) / rate;
}

double sample_weibull(Rng& rng, double shape, double scale) {
    if (!(shape > 0) || !(scale > 0))
        throw Error(Errc::domain_error, "weibull shape and scale must be positive");
    return scale * std::pow(-std::log(rng.uniform01()), 1 / shape);
}

double sample_normal(Rng& rng, double mean, double sd) {
    if (!(sd >= 0)) throw Error(Errc::domain_error, "normal sd must be non-negative");
    // Marsaglia polar method; the second variate of each pair is discarded to
    // keep the stream position independent of call history.
    for (;;) {
        double u = 2 * rng.uniform01() - 1;
        double v = 2 * rng.uniform01() - 1;
        double s = u * u + v * v;
        if (s > 0 && s < 1) {
            return mean + sd * u * std::sqrt(-2 * std::log(s) / s);
        }
    }
}

double sample_lognormal(Rng& rng, double log_mean, double log_sd) {
    return std::exp(sample_normal(rng, log_mean, log_sd));
}

double sample_gamma(Rng& rng, double shape, double rate) {
    if (!(shape > 0) || !(rate > 0))
        throw Error(Errc::domain_error, "gamma shape and rate must be positive");
    // Marsaglia-Tsang squeeze; shapes below 1 use the U^(1/k) boost.
    double boost = 1;
    double k = shape;
    if (k < 1) {
        boost = std::pow(rng.uniform01(), 1 / k);
        k += 1;
    }
    double d = k - 1.0 / 3;
    double c = 1 / std::sqrt(9 * d);
    for (;;) {
        double x = sample_normal(rng, 0, 1);
        double v = 1 + c * x;
        if (v <= 0) continue;
        v = v * v * v;
        double u = rng.uniform01();
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v))
            return boost * d * v / rate;
    }
}

double sample(const LifeModel& model, Rng& rng) {
    switch (model.family) {
        case Family::exponential: return sample_exponential(rng, model.p1);
        case Family::weibull: return sample_weibull(rng, model.p1, model.p2);
        case Family::normal: return sample_normal(rng, model.p1, model.p2);
        case Family::lognormal: return sample_lognormal(rng, model.p1, model.p2);
        case Family::gamma: return sample_gamma(rng, model.p1, model.p2);
    }
    throw Error(Errc::bad_argument, "unknown family");
}

}  // namespace airel::life
