#include "airel/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "airel/numeric.hpp"

namespace airel::metrics {

namespace {

GroupSummary summarize_group(const std::string& key, const std::vector<const Incident*>& incidents,
                             const Window& window, const SummarizeOptions& opts) {
    GroupSummary g;
    g.key = key;
    g.failures = incidents.size();
    double window_days = window.days();
    double closed_hours_sum = 0;
    std::size_t closed = 0;
    for (const Incident* inc : incidents) {
        Downtime dt = incident_downtime(*inc, window);
        if (dt.censored) {
            ++g.censored;
            if (opts.downtime == DowntimePolicy::include_censored) {
                closed_hours_sum += dt.hours;
                ++closed;
                g.total_downtime_hours += dt.hours;
            }
        } else {
            closed_hours_sum += dt.hours;
            ++closed;
            g.total_downtime_hours += dt.hours;
        }
    }
    if (closed > 0) g.mttr_days = closed_hours_sum / static_cast<double>(closed) / 24.0;

    if (g.failures > 0) {
        if (opts.mtbf_mean_gap) {
            std::vector<UtcSeconds> starts;
            for (const Incident* inc : incidents) starts.push_back(inc->start);
            std::sort(starts.begin(), starts.end());
            if (starts.size() >= 2) {
                double span = static_cast<double>(starts.back() - starts.front());
                g.mtbf_days = span / static_cast<double>(starts.size() - 1) / kSecondsPerDay;
            }
        } else {
            g.mtbf_days = window_days / static_cast<double>(g.failures);
        }
        g.failure_rate_per_100d = 100.0 * static_cast<double>(g.failures) / window_days;
    }
    return g;
}

}  // namespace

std::vector<GroupSummary> summarize(const IncidentStore& store, const SummarizeOptions& opts) {
    if (store.empty()) throw Error(Errc::empty_store, "summarize needs at least one incident");

    std::vector<GroupSummary> out;
    if (opts.group == GroupBy::component) {
        std::map<std::string, std::vector<const Incident*>> groups;
        for (const Incident& inc : store.incidents()) groups[inc.component].push_back(&inc);
        for (const auto& [key, incs] : groups)
            out.push_back(summarize_group(key, incs, store.window(), opts));
    } else {
        std::map<Subsystem, std::vector<const Incident*>> groups;
        for (const Incident& inc : store.incidents()) groups[inc.subsystem].push_back(&inc);
        for (Subsystem s : kNamedSubsystems) {
            auto it = groups.find(s);
            out.push_back(summarize_group(subsystem_name(s),
                                          it == groups.end() ? std::vector<const Incident*>{} : it->second,
                                          store.window(), opts));
        }
        auto it = groups.find(Subsystem::unknown);
        if (it != groups.end())
            out.push_back(summarize_group(subsystem_name(Subsystem::unknown), it->second,
                                          store.window(), opts));
    }
    return out;
}

std::vector<SubsystemShare> subsystem_counts(const IncidentStore& store) {
    std::map<Subsystem, std::size_t> counts;
    for (const Incident& inc : store.incidents()) ++counts[inc.subsystem];
    double total = static_cast<double>(store.size());
    std::vector<SubsystemShare> out;
    auto add = [&](Subsystem s) {
        SubsystemShare share;
        share.subsystem = s;
        auto it = counts.find(s);
        share.count = it == counts.end() ? 0 : it->second;
        share.share_pct = total > 0 ? 100.0 * static_cast<double>(share.count) / total : 0;
        out.push_back(share);
    };
    for (Subsystem s : kNamedSubsystems) add(s);
    if (counts.count(Subsystem::unknown)) add(Subsystem::unknown);
    return out;
}

double composite_reliability(std::span<const double> values) {
    double product = 1;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 0 && values[i] <= 1))
            throw Error(Errc::out_of_range,
                        "reliability value at index " + std::to_string(i) + " outside [0,1]");
        product *= values[i];
    }
    return product;
}

double cost_of_downtime(double downtime_hours, double loss_rate_per_hour) {
    if (downtime_hours < 0 || loss_rate_per_hour < 0)
        throw Error(Errc::negative_input, "cost of downtime needs non-negative inputs");
    return downtime_hours * loss_rate_per_hour;
}

Pofod pofod(std::size_t failures, std::size_t demands, double alpha) {
    if (demands == 0) throw Error(Errc::zero_demands, "POFOD needs at least one demand");
    if (failures > demands)
        throw Error(Errc::failures_exceed_demands, "failures exceed demands");
    if (!(alpha > 0 && alpha < 1)) throw Error(Errc::bad_alpha, "alpha outside (0,1)");
    double n = static_cast<double>(demands);
    double p = static_cast<double>(failures) / n;
    double z = numeric::normal_quantile(1 - alpha / 2);
    double z2 = z * z;
    double denom = 1 + z2 / n;
    double center = (p + z2 / (2 * n)) / denom;
    double half = z / denom * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
    Pofod out;
    out.estimate = p;
    out.lo = std::max(0.0, center - half);
    out.hi = std::min(1.0, center + half);
    out.alpha = alpha;
    return out;
}

double ari(double mttr_days, double mtbf_days) {
    if (!(mttr_days > 0)) throw Error(Errc::zero_mttr, "ARI needs mttr > 0");
    if (!(mtbf_days > 0)) throw Error(Errc::zero_mtbf, "ARI needs mtbf > 0");
    return mtbf_days / mttr_days;
}

EmpiricalSurvival::EmpiricalSurvival(std::vector<double> gaps) {
    if (gaps.empty()) throw Error(Errc::empty_input, "survival needs at least one gap");
    for (double g : gaps)
        if (!(g > 0)) throw Error(Errc::nonpositive_gap, "gaps must be positive");
    std::sort(gaps.begin(), gaps.end());
    n_ = gaps.size();
    std::size_t i = 0;
    while (i < gaps.size()) {
        std::size_t j = i;
        while (j < gaps.size() && gaps[j] == gaps[i]) ++j;
        times_.push_back(gaps[i]);
        // S(t) at t = gaps[i]: fraction strictly greater.
        survival_.push_back(static_cast<double>(gaps.size() - j) / static_cast<double>(n_));
        i = j;
    }
}

double EmpiricalSurvival::operator()(double t) const {
    // Fraction of gaps > t; right-continuous step function.
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    if (it == times_.begin()) return 1.0;
    return survival_[static_cast<std::size_t>(it - times_.begin()) - 1];
}

std::vector<double> interarrival_gaps(const IncidentStore& store) {
    std::vector<double> gaps;
    const auto& incs = store.incidents();  // already sorted by start
    for (std::size_t i = 1; i < incs.size(); ++i) {
        double gap = static_cast<double>(incs[i].start - incs[i - 1].start) / kSecondsPerDay;
        if (gap > 0) gaps.push_back(gap);
    }
    return gaps;
}

RollingRate rolling_failure_rate(const IncidentStore& store, double window_days,
                                 double step_days) {
    double span = store.window().days();
    if (!(window_days > 0) || !(step_days > 0))
        throw Error(Errc::window_too_large, "window and step must be positive");
    if (window_days > span)
        throw Error(Errc::window_too_large, "rolling window exceeds the observation window");

    std::vector<double> offsets;  // failure offsets in days, sorted
    for (const Incident& inc : store.incidents())
        offsets.push_back(static_cast<double>(inc.start - store.window().start) / kSecondsPerDay);

    RollingRate out;
    const double eps = 1e-9;
    for (double t = window_days; t <= span + eps; t += step_days) {
        double lo = t - window_days;
        // count failures with offset in (lo, t]
        std::size_t count = 0;
        for (double x : offsets)
            if (x > lo && x <= t) ++count;
        out.t_days.push_back(t);
        out.rate_per_day.push_back(static_cast<double>(count) / window_days);
    }
    std::vector<double> log_t;
    std::vector<double> rate_pts;
    for (std::size_t i = 0; i < out.t_days.size(); ++i) {
        if (out.t_days[i] > 0) {
            log_t.push_back(std::log(out.t_days[i]));
            rate_pts.push_back(out.rate_per_day[i]);
        }
    }
    if (log_t.size() >= 2) {
        auto fit = numeric::least_squares(log_t, rate_pts);
        out.trend_intercept = fit.intercept;
        out.trend_slope = fit.slope;
    }
    return out;
}

}  // namespace airel::metrics
