#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "airel/core.hpp"

namespace airel::fmea {

struct Scores {
    int severity = 1;   // S, 1..10
    int detection = 1;  // D, 1..10
    std::optional<int> occurrence;  // O override; derived from counts when absent
};

// failure_mode -> scores. Parsed from CSV with header
// `failure_mode,severity,detection` plus an optional `occurrence` column.
using ScoringMap = std::map<std::string, Scores>;

ScoringMap parse_scoring_csv(const std::string& text);

struct Entry {
    std::string failure_mode;
    std::string root_cause;
    std::size_t failure_events = 0;
    int severity = 1;
    int occurrence = 1;
    int detection = 1;
    double downtime_hours = 0;   // summed over the grouped incidents
    double impact_score = 0;     // severity * downtime_hours
    int rpn = 1;                 // severity * occurrence * detection
};

// Grouped incidents whose failure mode has no entry in the scoring map (only
// produced in non-strict mode).
struct UnscoredGroup {
    std::string failure_mode;
    std::string root_cause;
    std::size_t failure_events = 0;
    double downtime_hours = 0;
};

struct Analysis {
    std::vector<Entry> entries;
    std::vector<UnscoredGroup> unscored;
};

// Validates scores and computes rpn/impact for one entry.
Entry score(const std::string& failure_mode, const std::string& root_cause,
            std::size_t failure_events, int severity, int occurrence, int detection,
            double downtime_hours);

// Groups incidents by (failure_mode, root_cause); empty modes group under
// "(unspecified)". Occurrence defaults to the 1..10 binning
// clamp(ceil(10 * n / n_max), 1, 10) over the grouped counts and can be
// overridden per mode through the scoring map. Modes missing from the map
// raise unmapped_failure_mode in strict mode and are returned unscored
// otherwise. Downtime follows the given policy (open incidents excluded by
// default).
Analysis from_incidents(const IncidentStore& store, const ScoringMap& map, bool strict,
                        DowntimePolicy policy = DowntimePolicy::exclude_open);

struct HeatThresholds {
    int rpn_red = 200;     // >=
    int rpn_yellow = 25;   // >=, below red
};

// Stable priority order: rpn descending, then impact descending, then
// failure mode ascending. Returns the entries with their heat tags.
std::vector<Entry> prioritize(std::vector<Entry> entries);
const char* heat_tag(const Entry& e, const HeatThresholds& heat = {});

}  // namespace airel::fmea
