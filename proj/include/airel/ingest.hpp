#pragma once

#include <optional>
#include <string>
#include <vector>

#include "airel/core.hpp"

namespace airel::ingest {

// One classification rule: component glob, optional failure-mode glob, target
// subsystem. Globs support `*` and match case-insensitively.
struct MappingRule {
    std::string component_glob;
    std::string mode_glob;  // empty = any mode
    Subsystem subsystem = Subsystem::unknown;
};

// Case-insensitive glob with `*` wildcards.
bool glob_match(const std::string& pattern, const std::string& text);

// Rule file format, one rule per line:
//   component_glob => subsystem
//   component_glob | mode_glob => subsystem
// Full-line `#` comments and blank lines are skipped. First match wins.
std::vector<MappingRule> parse_mapping(const std::string& text);

// First matching rule's subsystem; `unknown` when nothing matches.
Subsystem classify(const std::vector<MappingRule>& rules, const std::string& component,
                   const std::string& failure_mode);

// Incident CSV. Header must be exactly:
//   id,component,subsystem,start,end,severity,failure_mode,root_cause,description
// Empty subsystem cells fall back to the mapping rules (strict mode errors on
// an unknown result); an explicit cell overrides the rules. Empty end = open
// incident. Empty severity defaults to 5. Returns a validated store.
IncidentStore parse_incident_csv(const std::string& text, Window window,
                                 const std::vector<MappingRule>& rules, bool strict);

std::string store_to_csv(const IncidentStore& store);

// Store JSON (window + incidents) as written by the `ingest` subcommand.
std::string store_to_json(const IncidentStore& store);
IncidentStore store_from_json(const std::string& text);

// Performance CSV with header `timestamp,value`. Comment lines starting with
// `#` are skipped except `# release <timestamp>` which records a deployment
// marker. Baseline q0 = mean of the pre-disruption prefix (samples that stay
// at or above dip_threshold times the running prefix mean), or the explicit
// override when given.
PerformanceSeries parse_performance_csv(const std::string& text,
                                        std::optional<double> baseline_override = std::nullopt,
                                        double dip_threshold = 0.9);

// Splits one CSV record; understands RFC 4180 quoting (embedded commas and
// doubled quotes). Newlines inside fields are not supported.
std::vector<std::string> split_csv_row(const std::string& line);
std::string csv_escape(const std::string& field);

}  // namespace airel::ingest
