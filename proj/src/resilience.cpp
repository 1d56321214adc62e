#include "airel/resilience.hpp"

#include <algorithm>
#include <cmath>

#include "airel/numeric.hpp"

namespace airel::resilience {

namespace {

void check_options(const Options& opts) {
    auto frac = [](double v) { return v > 0 && v <= 1; };
    if (!frac(opts.theta_f) || !frac(opts.theta_r) || !frac(opts.floor_frac))
        throw Error(Errc::bad_threshold, "thresholds must lie in (0, 1]");
    if (opts.theta_f > opts.theta_r)
        throw Error(Errc::bad_threshold, "disruption threshold above recovery threshold");
    if (!(opts.delta > 0 && opts.delta < 1))
        throw Error(Errc::bad_threshold, "delta must lie in (0, 1)");
}

void check_series(const PerformanceSeries& series) {
    if (series.samples.size() < 2)
        throw Error(Errc::empty_input, "performance series needs at least 2 samples");
    if (!(series.baseline > 0)) throw Error(Errc::no_baseline, "series baseline must be positive");
}

// Area under min(q, q0) between sample indices [a, b] by the trapezoid rule.
double clipped_area(const PerformanceSeries& series, std::size_t a, std::size_t b) {
    double q0 = series.baseline;
    double area = 0;
    for (std::size_t k = a; k < b; ++k) {
        double left = std::min(series.samples[k].value, q0);
        double right = std::min(series.samples[k + 1].value, q0);
        double dt = static_cast<double>(series.samples[k + 1].t - series.samples[k].t);
        area += (left + right) / 2 * dt;
    }
    return area;
}

std::size_t episode_min_index(const PerformanceSeries& series, const Episode& ep) {
    std::size_t m = ep.i_incident;
    for (std::size_t k = ep.i_incident; k <= ep.i_recovery; ++k)
        if (series.samples[k].value < series.samples[m].value) m = k;
    return m;
}

}  // namespace

std::vector<Episode> extract_episodes(const PerformanceSeries& series, const Options& opts) {
    check_options(opts);
    check_series(series);
    const auto& s = series.samples;
    const double fail_level = opts.theta_f * series.baseline;
    const double recover_level = opts.theta_r * series.baseline;

    std::vector<Episode> episodes;
    std::size_t cursor = 0;
    while (cursor < s.size()) {
        // Disruption onset: first sample strictly below the failure level.
        std::size_t i = cursor;
        while (i < s.size() && s[i].value >= fail_level) ++i;
        if (i >= s.size()) break;

        // Floor: first later local minimum followed by three non-decreasing
        // samples (as many as remain near the series end).
        std::size_t f = s.size() - 1;
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            if (s[j - 1].value < s[j].value) continue;
            bool settled = true;
            std::size_t checked = 0;
            for (std::size_t k = j; k + 1 < s.size() && checked < 3; ++k, ++checked) {
                if (s[k + 1].value < s[k].value) {
                    settled = false;
                    break;
                }
            }
            if (settled) {
                f = j;
                break;
            }
        }

        Episode ep;
        ep.i_incident = i;
        ep.i_floor = f;
        ep.i_recovery = s.size() - 1;
        for (std::size_t k = f + 1; k < s.size(); ++k) {
            if (s[k].value >= recover_level) {
                ep.i_recovery = k;
                ep.recovered = true;
                break;
            }
        }
        ep.t_incident = static_cast<double>(s[ep.i_incident].t);
        ep.t_floor = static_cast<double>(s[ep.i_floor].t);
        ep.t_recovery = static_cast<double>(s[ep.i_recovery].t);
        episodes.push_back(ep);

        if (!ep.recovered) break;
        cursor = ep.i_recovery + 1;
    }
    return episodes;
}

Profiles profiles(const PerformanceSeries& series, const Episode& ep) {
    check_series(series);
    if (ep.i_recovery < ep.i_floor || ep.i_floor < ep.i_incident ||
        ep.i_recovery >= series.samples.size())
        throw Error(Errc::out_of_range, "episode indices out of order");
    Profiles p;
    double q0 = series.baseline;
    if (ep.i_floor > ep.i_incident) {
        double dt = ep.t_floor - ep.t_incident;
        p.degradation = clipped_area(series, ep.i_incident, ep.i_floor) / (q0 * dt);
    }
    if (ep.i_recovery > ep.i_floor) {
        double dt = ep.t_recovery - ep.t_floor;
        p.recovery = clipped_area(series, ep.i_floor, ep.i_recovery) / (q0 * dt);
    }
    return p;
}

double resilience_index(double t_incident, double dt_f, double dt_r, double deg_profile,
                        double rec_profile) {
    if (t_incident < 0 || dt_f < 0 || dt_r < 0)
        throw Error(Errc::negative_input, "durations must be non-negative");
    if (!(deg_profile >= 0 && deg_profile <= 1) || !(rec_profile >= 0 && rec_profile <= 1))
        throw Error(Errc::out_of_range, "profiles must lie in [0, 1]");
    double denom = t_incident + dt_f + dt_r;
    if (!(denom > 0)) throw Error(Errc::domain_error, "episode has zero total duration");
    return (t_incident + deg_profile * dt_f + rec_profile * dt_r) / denom;
}

const char* failure_code(FailureClass c) {
    switch (c) {
        case FailureClass::brittle: return "f1";
        case FailureClass::ductile: return "f2";
        case FailureClass::graceful: return "f3";
    }
    return "f2";
}

const char* failure_label(FailureClass c) {
    switch (c) {
        case FailureClass::brittle: return "brittle";
        case FailureClass::ductile: return "ductile";
        case FailureClass::graceful: return "graceful";
    }
    return "ductile";
}

const char* recovery_code(RecoveryClass c) {
    switch (c) {
        case RecoveryClass::better_than_new: return "r1";
        case RecoveryClass::good_as_new: return "r2";
        case RecoveryClass::better_than_old: return "r3";
        case RecoveryClass::good_as_old: return "r4";
        case RecoveryClass::worse_than_old: return "r5";
        case RecoveryClass::incomplete: return "r6";
    }
    return "r6";
}

const char* recovery_label(RecoveryClass c) {
    switch (c) {
        case RecoveryClass::better_than_new: return "better than new";
        case RecoveryClass::good_as_new: return "as good as new";
        case RecoveryClass::better_than_old: return "better than old";
        case RecoveryClass::good_as_old: return "as good as old";
        case RecoveryClass::worse_than_old: return "worse than old";
        case RecoveryClass::incomplete: return "incomplete";
    }
    return "r6";
}

FailureClass classify_failure(const PerformanceSeries& series, const Episode& ep,
                              const Options& opts) {
    check_options(opts);
    check_series(series);
    double q0 = series.baseline;
    std::size_t m = episode_min_index(series, ep);
    double floor_value = series.samples[m].value;
    if (floor_value >= opts.floor_frac * q0) return FailureClass::graceful;
    bool one_step_fall = m > 0 && series.samples[m - 1].value >= opts.theta_r * q0;
    return one_step_fall ? FailureClass::brittle : FailureClass::ductile;
}

RecoveryClass classify_recovery(const PerformanceSeries& series, const Episode& ep,
                                const Options& opts) {
    check_options(opts);
    check_series(series);
    if (!ep.recovered) return RecoveryClass::incomplete;
    const auto& s = series.samples;
    if (ep.i_recovery + 3 >= s.size())
        throw Error(Errc::insufficient_tail,
                    "recovery classification needs three samples after the recovery point");
    double tail = (s[ep.i_recovery + 1].value + s[ep.i_recovery + 2].value +
                   s[ep.i_recovery + 3].value) / 3;
    double q0 = series.baseline;

    bool release_inside = false;
    for (UtcSeconds r : series.releases) {
        double t = static_cast<double>(r);
        if (t >= ep.t_floor && t <= ep.t_recovery) {
            release_inside = true;
            break;
        }
    }
    if (release_inside) {
        // Reference level of the replaced version: just before the incident.
        double anchor = q0;
        if (ep.i_incident >= 3)
            anchor = (s[ep.i_incident - 3].value + s[ep.i_incident - 2].value +
                      s[ep.i_incident - 1].value) / 3;
        if (anchor > 0) {
            if (tail > (1 + opts.delta) * anchor) return RecoveryClass::better_than_old;
            if (std::fabs(tail - anchor) <= opts.delta * anchor) return RecoveryClass::good_as_old;
        }
    }
    if (tail > (1 + opts.delta) * q0) return RecoveryClass::better_than_new;
    if (std::fabs(tail - q0) <= opts.delta * q0) return RecoveryClass::good_as_new;
    return RecoveryClass::worse_than_old;
}

std::vector<bool> expedite_flags(const std::vector<Episode>& episodes, double quantile) {
    if (!(quantile >= 0 && quantile <= 1))
        throw Error(Errc::bad_threshold, "expedite quantile outside [0, 1]");
    std::vector<bool> flags(episodes.size(), false);
    if (episodes.empty()) return flags;
    std::vector<double> times;
    for (const Episode& ep : episodes) times.push_back(ep.recovery_time());
    double cut = numeric::quantile(times, quantile);
    for (std::size_t i = 0; i < episodes.size(); ++i)
        flags[i] = episodes[i].recovery_time() <= cut;
    return flags;
}

}  // namespace airel::resilience
