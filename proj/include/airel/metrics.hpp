#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "airel/core.hpp"

namespace airel::metrics {

enum class GroupBy { component, subsystem };

struct GroupSummary {
    std::string key;
    std::size_t failures = 0;
    // Observation window divided by failure count; empty when failures == 0.
    // (The windowed form, not the mean inter-arrival gap; see SummarizeOptions.)
    std::optional<double> mtbf_days;
    double mttr_days = 0;              // mean closed-incident duration; 0 when none closed
    double failure_rate_per_100d = 0;  // 100 * failures / window days
    double total_downtime_hours = 0;
    std::size_t censored = 0;          // open incidents (excluded from mttr by default)
};

struct SummarizeOptions {
    GroupBy group = GroupBy::component;
    DowntimePolicy downtime = DowntimePolicy::exclude_open;
    // Alternative MTBF: mean gap between consecutive failures (needs >= 2).
    bool mtbf_mean_gap = false;
};

// One summary per group. Component grouping lists components present in the
// store; subsystem grouping always lists the five named subsystems (plus
// unknown when present) so zero-failure groups are visible.
std::vector<GroupSummary> summarize(const IncidentStore& store, const SummarizeOptions& opts = {});

struct SubsystemShare {
    Subsystem subsystem = Subsystem::unknown;
    std::size_t count = 0;
    double share_pct = 0;  // 100 * count / store size
};

// Counts per subsystem in fixed taxonomy order; unknown appended when present.
// Shares are percentages of the whole store.
std::vector<SubsystemShare> subsystem_counts(const IncidentStore& store);

// Product of per-source reliabilities; empty input gives 1. Values must lie
// in [0, 1].
double composite_reliability(std::span<const double> values);

// downtime_hours * loss_rate_per_hour; both must be non-negative.
double cost_of_downtime(double downtime_hours, double loss_rate_per_hour);

struct Pofod {
    double estimate = 0;
    double lo = 0;
    double hi = 0;
    double alpha = 0.05;
};

// Probability of failure on demand with a two-sided Wilson score interval at
// level 1 - alpha.
Pofod pofod(std::size_t failures, std::size_t demands, double alpha = 0.05);

// Recovery-to-failure ratio mtbf / mttr; both arguments must be positive.
double ari(double mttr_days, double mtbf_days);

// Right-continuous empirical survival of inter-failure gaps:
// S(t) = fraction of gaps strictly greater than t.
class EmpiricalSurvival {
public:
    explicit EmpiricalSurvival(std::vector<double> gaps);

    double operator()(double t) const;
    const std::vector<double>& times() const { return times_; }       // sorted unique gaps
    const std::vector<double>& survival() const { return survival_; } // S at those times

private:
    std::vector<double> times_;
    std::vector<double> survival_;
    std::size_t n_ = 0;
};

// Gaps between consecutive failure starts, in days. Zero gaps (same-second
// starts) are dropped; the censored gap after the last failure is not formed.
std::vector<double> interarrival_gaps(const IncidentStore& store);

struct RollingRate {
    std::vector<double> t_days;        // offsets from window start
    std::vector<double> rate_per_day;  // failures in (t - window, t] / window
    double trend_intercept = 0;        // rate ~ intercept + slope * ln(t)
    double trend_slope = 0;
};

// Failure rate over a sliding window of window_days, stepped by step_days
// from the first full window to the end of the observation window, with a
// logarithmic trend fit across the sampled points.
RollingRate rolling_failure_rate(const IncidentStore& store, double window_days,
                                 double step_days = 1.0);

}  // namespace airel::metrics
