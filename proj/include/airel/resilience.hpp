#pragma once

#include <cstddef>
#include <vector>

#include "airel/core.hpp"

namespace airel::resilience {

struct Options {
    double theta_f = 0.9;    // disruption threshold, fraction of q0
    double theta_r = 0.95;   // recovery threshold, fraction of q0
    double delta = 0.05;     // tolerance band for the recovery classes
    double floor_frac = 0.5; // brittle/graceful split, fraction of q0
};

// One disruption episode on the sampled performance signal.
//   t_i: first sample below theta_f * q0
//   t_f: first later sample at a local minimum followed by three
//        non-decreasing samples (or the series end)
//   t_r: first sample at or above theta_r * q0 after t_f; when the series
//        ends first, t_r is the last sample and the episode is unrecovered.
struct Episode {
    std::size_t i_incident = 0;
    std::size_t i_floor = 0;
    std::size_t i_recovery = 0;
    bool recovered = false;

    double t_incident = 0;  // seconds, absolute sample timestamps
    double t_floor = 0;
    double t_recovery = 0;

    double degradation_time() const { return t_floor - t_incident; }
    double recovery_time() const { return t_recovery - t_floor; }
};

// Left-to-right scan; episodes never overlap. Throws when the series never
// dips (no episode is not an error: returns empty), but rejects thresholds
// outside (0, 1] or theta_f > theta_r.
std::vector<Episode> extract_episodes(const PerformanceSeries& series, const Options& opts = {});

struct Profiles {
    double degradation = 1;  // F: normalized area over [t_i, t_f]
    double recovery = 1;     // R: normalized area over [t_f, t_r]
};

// Trapezoidal areas of the signal clipped to [0, q0], normalized by the
// baseline area of each leg. A zero-length leg scores 1.
Profiles profiles(const PerformanceSeries& series, const Episode& ep);

// (T_i + F*dT_f + R*dT_r) / (T_i + dT_f + dT_r). All durations non-negative,
// F and R in [0, 1], and the denominator must be positive. Equals 1 exactly
// when both disruption legs have zero length.
double resilience_index(double t_incident, double dt_f, double dt_r, double deg_profile,
                        double rec_profile);

enum class FailureClass { brittle, ductile, graceful };          // f1, f2, f3
enum class RecoveryClass {
    better_than_new,  // r1
    good_as_new,      // r2
    better_than_old,  // r3
    good_as_old,      // r4
    worse_than_old,   // r5
    incomplete,       // r6
};

const char* failure_code(FailureClass c);    // "f1".."f3"
const char* failure_label(FailureClass c);
const char* recovery_code(RecoveryClass c);  // "r1".."r6"
const char* recovery_label(RecoveryClass c);

// Brittle: a one-step fall from at least theta_r * q0 to the episode minimum
// with the minimum below floor_frac * q0. Graceful: minimum stays at or
// above floor_frac * q0. Everything else is ductile.
FailureClass classify_failure(const PerformanceSeries& series, const Episode& ep,
                              const Options& opts = {});

// Compares the mean of the three samples after t_r with the baseline (or,
// when a release marker falls inside [t_f, t_r], with the pre-incident level:
// mean of the three samples before t_i, q0 when fewer exist). Unrecovered
// episodes are r6; recovered episodes with fewer than three trailing samples
// raise insufficient_tail.
RecoveryClass classify_recovery(const PerformanceSeries& series, const Episode& ep,
                                const Options& opts = {});

// Flags episodes whose recovery leg is at or below the given quantile of all
// episodes' recovery times.
std::vector<bool> expedite_flags(const std::vector<Episode>& episodes, double quantile = 0.25);

}  // namespace airel::resilience
