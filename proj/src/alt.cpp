#include "airel/alt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "airel/life.hpp"
#include "airel/numeric.hpp"

namespace airel::alt {

double StressLifeModel::eta(double stress) const { return eta0 * std::exp(stress_coeff * stress); }

double StressLifeModel::reliability(double t, double stress) const {
    if (t < 0) throw Error(Errc::domain_error, "reliability needs t >= 0");
    return std::exp(-std::pow(t / eta(stress), shape));
}

StressLifeModel fit_stress_life(std::span<const StressGroup> groups) {
    if (groups.size() < 2)
        throw Error(Errc::too_few_stress_levels, "need at least two stress groups");
    std::set<double> distinct;
    for (const StressGroup& g : groups) distinct.insert(g.stress);
    if (distinct.size() < 2)
        throw Error(Errc::too_few_stress_levels, "need at least two distinct stress levels");

    std::vector<double> stresses, log_etas, shapes, weights;
    for (const StressGroup& g : groups) {
        life::LifeModel m = life::fit_mle(life::Family::weibull, g.durations);
        stresses.push_back(g.stress);
        log_etas.push_back(std::log(m.p2));
        shapes.push_back(m.p1);
        weights.push_back(static_cast<double>(g.durations.size()));
    }
    double wsum = 0, shape = 0;
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        shape += weights[i] * shapes[i];
        wsum += weights[i];
    }
    shape /= wsum;

    auto fit = numeric::least_squares(stresses, log_etas);
    StressLifeModel m;
    m.shape = shape;
    m.eta0 = std::exp(fit.intercept);
    m.stress_coeff = fit.slope;
    return m;
}

double StressRateModel::rate(double stress) const { return base_rate * std::exp(gamma * stress); }

double StressRateModel::reliability(double t, double stress) const {
    if (t < 0) throw Error(Errc::domain_error, "reliability needs t >= 0");
    return std::exp(-rate(stress) * t);
}

StressRateModel make_stress_rate(double base_rate, double gamma) {
    if (!(base_rate > 0)) throw Error(Errc::negative_rate, "base rate must be positive");
    return {base_rate, gamma};
}

double time_varying_cdf(const std::function<double(double)>& rate, double t, double abs_tol) {
    if (t < 0) throw Error(Errc::domain_error, "cdf needs t >= 0");
    if (t == 0) return 0;
    auto guarded = [&](double u) {
        double r = rate(u);
        if (r < 0) throw Error(Errc::negative_rate, "rate function went negative");
        return r;
    };
    double h = numeric::adaptive_simpson(guarded, 0, t, abs_tol);
    return -std::expm1(-h);
}

double PosteriorGrid::weight_at(std::size_t shape_idx, std::size_t scale_idx) const {
    return weights[shape_idx * scale_axis.size() + scale_idx];
}

PosteriorGrid uniform_grid(double shape_lo, double shape_hi, std::size_t shape_n,
                           double scale_lo, double scale_hi, std::size_t scale_n) {
    if (shape_n < 2 || scale_n < 2 || !(shape_lo > 0) || !(shape_hi > shape_lo) ||
        !(scale_lo > 0) || !(scale_hi > scale_lo))
        throw Error(Errc::bad_grid, "grid needs positive increasing bounds and >= 2 points per axis");
    PosteriorGrid g;
    for (std::size_t i = 0; i < shape_n; ++i)
        g.shape_axis.push_back(shape_lo + (shape_hi - shape_lo) * static_cast<double>(i) /
                                              static_cast<double>(shape_n - 1));
    for (std::size_t j = 0; j < scale_n; ++j)
        g.scale_axis.push_back(scale_lo + (scale_hi - scale_lo) * static_cast<double>(j) /
                                              static_cast<double>(scale_n - 1));
    g.weights.assign(shape_n * scale_n, 1.0 / static_cast<double>(shape_n * scale_n));
    return g;
}

PosteriorGrid bayes_update(const PosteriorGrid& prior, std::span<const double> samples) {
    if (samples.empty()) throw Error(Errc::empty_input, "bayes update needs samples");
    for (double x : samples)
        if (!(x > 0)) throw Error(Errc::domain_error, "weibull samples must be positive");

    double sum_log = 0;
    for (double x : samples) sum_log += std::log(x);
    double n = static_cast<double>(samples.size());

    PosteriorGrid post = prior;
    std::vector<double> log_post(prior.weights.size(), -std::numeric_limits<double>::infinity());
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < prior.shape_axis.size(); ++i) {
        double b = prior.shape_axis[i];
        for (std::size_t j = 0; j < prior.scale_axis.size(); ++j) {
            double eta = prior.scale_axis[j];
            double w = prior.weight_at(i, j);
            if (w <= 0) continue;
            double sum_pow = 0;
            for (double x : samples) sum_pow += std::pow(x / eta, b);
            double ll = n * std::log(b / eta) + (b - 1) * (sum_log - n * std::log(eta)) - sum_pow;
            double lp = std::log(w) + ll;
            log_post[i * prior.scale_axis.size() + j] = lp;
            best = std::max(best, lp);
        }
    }
    if (!std::isfinite(best))
        throw NumericError(Errc::all_zero_likelihood, "posterior mass vanished on the whole grid");
    double total = 0;
    for (std::size_t k = 0; k < log_post.size(); ++k) {
        double w = std::exp(log_post[k] - best);
        post.weights[k] = w;
        total += w;
    }
    for (double& w : post.weights) w /= total;
    return post;
}

std::pair<double, double> posterior_mode(const PosteriorGrid& grid) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < grid.weights.size(); ++k)
        if (grid.weights[k] > grid.weights[best]) best = k;
    std::size_t i = best / grid.scale_axis.size();
    std::size_t j = best % grid.scale_axis.size();
    return {grid.shape_axis[i], grid.scale_axis[j]};
}

double posterior_reliability(const PosteriorGrid& grid, double t) {
    if (t < 0) throw Error(Errc::domain_error, "reliability needs t >= 0");
    double r = 0;
    for (std::size_t i = 0; i < grid.shape_axis.size(); ++i)
        for (std::size_t j = 0; j < grid.scale_axis.size(); ++j) {
            double w = grid.weight_at(i, j);
            if (w <= 0) continue;
            r += w * std::exp(-std::pow(t / grid.scale_axis[j], grid.shape_axis[i]));
        }
    return r;
}

}  // namespace airel::alt
