#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "airel/life.hpp"
#include "airel/rng.hpp"

namespace airel::sim {

struct ExponentialHazard {
    double rate = 0.1;  // per day
};

struct WeibullHazard {
    double shape = 1;
    double scale = 1;  // days
};

struct BathtubSpec {
    double early_shape = 0.5;
    double early_scale = 1;
    double constant_rate = 0;
    double wear_shape = 3;
    double wear_scale = 1;
};

using HazardSpec = std::variant<ExponentialHazard, WeibullHazard, BathtubSpec>;

struct GoodAsNew {};
// Kijima type II: after a gap X the virtual age becomes rho * (V + X).
// rho = 0 is good-as-new; rho = 1 is the minimal-repair (power-law process)
// limit.
struct BetterThanOld {
    double rho = 0.5;
};
// Good-as-new plus a uniform life stretch: every repair multiplies the
// hazard's time scale by (1 + growth), i.e. Weibull scale eta -> eta*(1+g).
struct BetterThanNew {
    double growth = 0.1;
};

using RepairSpec = std::variant<GoodAsNew, BetterThanOld, BetterThanNew>;

struct ConstantDowntime {
    double hours = 0;
};
struct LognormalDowntime {
    double log_mean = 0;
    double log_sd = 1;
};

using DowntimeSpec = std::variant<ConstantDowntime, LognormalDowntime>;

struct SimConfig {
    HazardSpec hazard = ExponentialHazard{};
    RepairSpec repair = GoodAsNew{};
    DowntimeSpec downtime = ConstantDowntime{};
    double window_days = 100;
    std::size_t replications = 1;
    std::uint64_t seed = 0;
};

// Flat key=value config text; see data/sim_example.cfg for the key set.
SimConfig parse_sim_config(const std::string& text);

struct SimEvent {
    double epoch_days = 0;      // failure time from the window start
    double downtime_hours = 0;
};

struct Replication {
    std::vector<SimEvent> events;
};

struct SimHistory {
    std::vector<Replication> replications;
    double window_days = 0;
    std::uint64_t seed = 0;
    std::string generator = kGeneratorId;

    double mean_count() const;
    double mean_downtime_hours() const;  // mean over all events; 0 when none
};

// Renewal/repairable-system Monte Carlo. Gap times are drawn by inverting
// the conditional survival given the virtual age; the process is censored at
// the window end. Replication streams derive from (seed, index), so any
// subset of replications reproduces bit-identically.
SimHistory simulate(const SimConfig& config);
Replication simulate_replication(const SimConfig& config, std::size_t index);

// Cumulative expected failures of the power-law process, (t/scale)^shape;
// cross-checks the rho = 1 repair limit.
double expected_count_nhpp(double shape, double scale, double t);

// Standard-normal stream whose mean shifts by `shift_sigmas` from
// onset_index onward; drift-detector test fixture.
std::vector<double> inject_drift_stream(std::size_t length, std::size_t onset_index,
                                        double shift_sigmas, Rng& rng);

// History CSV with header `replication,epoch_days,downtime_hours`.
std::string history_to_csv(const SimHistory& history);

}  // namespace airel::sim
